// zeta.hpp
//
// Numerical Riemann zeta engine: Euler-Maclaurin values of zeta(s), the
// functional-equation factor chi(s), Hardy's Z(t), zero location by sign
// scan + bisection, the zero-counting main term, critical-line moment
// integrals, Dirichlet-polynomial mean squares, and Farmer's ratio
// conjecture.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "rmt/zeta_types.hpp"

namespace rmt {

// zeta(s) by Euler-Maclaurin with adaptive term/correction counts.
// Preconditions: s != 1, |Im s| <= 1e5 (desk-scale guard).
std::complex<double> zeta_value(ComplexPoint s, double target_rel_err = 1e-12);

// chi(s) with zeta(s) = chi(s) zeta(1-s); |chi(1/2+it)| = 1
std::complex<double> chi_factor(ComplexPoint s);

// Riemann-Siegel theta, the rotation making Z(t) = e^{i theta} zeta(1/2+it)
// real; asymptotic series, t >= 10
double riemann_siegel_theta(double t);

// Hardy Z(t) for t >= 10.  Below the Riemann-Siegel crossover (t = 8000) the
// value is the rotated Euler-Maclaurin zeta, accurate to ~1e-12; above it the
// Riemann-Siegel main sum with three correction terms (error < 1e-9 there).
double hardy_z(double t);

// pure Riemann-Siegel path: main sum of length floor(sqrt(t/2pi)) plus
// correction terms C_0..C_2 (exposed for crossover validation)
double riemann_siegel_z(double t);

// all zero ordinates in (10, T_max], located by adaptive sign scan plus
// bisection to 1e-9; count checked against the main term and unusually large
// gaps flagged in warnings (advisory, never fatal)
ZeroList find_zeros(double t_max);

// (T / 2 pi) log(T / (2 pi e)), T > 2 pi e
double count_main_term(double t);

struct StepControl {
    double panel_width = 0.25;
    int nodes = 8;
    double target_rel_err = 1e-3;
};

struct MomentIntegral {
    double value;       // (1/T) int_0^T |zeta(1/2+it)|^{2k} dt
    double quad_error;  // estimated quadrature error (same units)
};

// k in {1, 2, 3}, T <= 1e4
MomentIntegral moment_integral(int k, double t_max, StepControl ctrl = {});

struct MeanSquare {
    double exact;     // int_0^T |sum a_n n^{it}|^2 dt, termwise closed form
    double diagonal;  // T sum |a_n|^2
};
MeanSquare dirichlet_poly_mean_square(const std::vector<double>& coeffs, double t_max);

// Farmer's ratio conjecture, right side:
// 1 + (u-a)(v-b)/((u+v)(a+b)) (1 - T^{-(u+v)})
std::complex<double> farmer_rhs(std::complex<double> u, std::complex<double> v,
                                std::complex<double> a, std::complex<double> b, double t_max);

// left side: (1/T) int_0^T zeta(s+u) zeta(1-s+v) / (zeta(s+a) zeta(1-s+b)) dt
// at s = 1/2 + it
std::complex<double> farmer_lhs(std::complex<double> u, std::complex<double> v,
                                std::complex<double> a, std::complex<double> b, double t_max,
                                StepControl ctrl = {});

// zero files: ASCII, one decimal ordinate per line, ascending
ZeroList load_zeros(const std::string& path);
void save_zeros(const ZeroList& list, const std::string& path);

}  // namespace rmt
