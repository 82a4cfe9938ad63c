// quadrature.hpp
//
// Gauss-Legendre rules (nodes computed by Newton iteration on the Legendre
// polynomial) plus small helpers for panel-composite integration.

#pragma once

#include <functional>
#include <vector>

namespace rmt {

struct QuadRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum = 2
};

// Gauss-Legendre rule of order n (n nodes, exact for degree 2n-1).
const QuadRule& gauss_legendre(int n);

// integral of f over [a, b] with an n-point GL rule
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

// composite: [a, b] split into `panels` equal panels, n-point GL on each
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int n);

// 2-d tensor GL on [a,b] x [c,d]
double integrate_gl_2d(const std::function<double(double, double)>& f, double a, double b,
                       double c, double d, int n);

}  // namespace rmt
