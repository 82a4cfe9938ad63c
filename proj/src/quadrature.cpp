#include "rmt/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace rmt {

namespace {

QuadRule build_gl(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

std::map<int, QuadRule> g_rules;
std::mutex g_rules_mutex;

}  // namespace

const QuadRule& gauss_legendre(int n) {
    std::lock_guard<std::mutex> lock(g_rules_mutex);
    auto it = g_rules.find(n);
    if (it == g_rules.end()) it = g_rules.emplace(n, build_gl(n)).first;
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
    const QuadRule& r = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
    return acc * half;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int n) {
    if (panels < 1) throw std::invalid_argument("integrate_panels: panels must be >= 1");
    const double w = (b - a) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) acc += integrate_gl(f, a + p * w, a + (p + 1) * w, n);
    return acc;
}

double integrate_gl_2d(const std::function<double(double, double)>& f, double a, double b,
                       double c, double d, int n) {
    const QuadRule& r = gauss_legendre(n);
    const double mx = 0.5 * (a + b), hx = 0.5 * (b - a);
    const double my = 0.5 * (c + d), hy = 0.5 * (d - c);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = mx + hx * r.nodes[i];
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += r.weights[j] * f(x, my + hy * r.nodes[j]);
        acc += r.weights[i] * row;
    }
    return acc * hx * hy;
}

}  // namespace rmt
