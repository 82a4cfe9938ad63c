// zeta.cpp
//
// Euler-Maclaurin:  zeta(s) = sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//                           + sum_k B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1} + R
// with N ~ 0.6 |t| so the correction series contracts by ~(1/3.8)^2 per
// term; the error estimate is the first omitted term times the standard
// |(s+2M+1)/(sigma+2M+1)| factor.
//
// Riemann-Siegel:   Z(t) = 2 sum_{n<=m} cos(theta - t log n)/sqrt(n)
//                        + (-1)^{m-1} (t/2pi)^{-1/4} [C0 + C1 (t/2pi)^{-1/2}
//                                                        + C2 (t/2pi)^{-1}]
// with m = floor(sqrt(t/2pi)), p the fractional part, and
//   C0 = psi(p),  C1 = -psi'''(p)/(96 pi^2),
//   C2 = psi''(p)/(64 pi^2) + psi^(6)(p)/(18432 pi^4),
//   psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p).
// psi derivatives come from truncated-Taylor (jet) arithmetic; near the
// removable singularities p = 1/4, 3/4 the quotient is rewritten through
// sin(x)/x factors so the jets stay well conditioned.
//
// A three-term Riemann-Siegel remainder is O((t/2pi)^{-9/4}), which crosses
// 1e-9 around t ~ 8000; below that Z comes from the rotated Euler-Maclaurin
// value instead.

#include "rmt/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "rmt/ensembles.hpp"  // NumericalError
#include "rmt/quadrature.hpp"
#include "rmt/special.hpp"

namespace rmt {

namespace {

constexpr double kRsCrossover = 8000.0;
constexpr double kTGuard = 1e5;

// ---- cached n^{-sigma} and log n tables -----------------------------------

class TermTable {
  public:
    void ensure(std::size_t n) {
        if (log_n_.size() >= n + 1) return;
        const std::size_t old = log_n_.size();
        log_n_.resize(n + 1);
        for (std::size_t i = std::max<std::size_t>(old, 1); i <= n; ++i)
            log_n_[i] = std::log(static_cast<double>(i));
        for (auto& [sigma, v] : pow_) grow_pow(sigma, v);
    }
    const double* logs() const { return log_n_.data(); }
    const double* pows(double sigma) {
        auto it = pow_.find(sigma);
        if (it == pow_.end()) {
            it = pow_.emplace(sigma, std::vector<double>()).first;
            grow_pow(sigma, it->second);
        } else if (it->second.size() < log_n_.size()) {
            grow_pow(sigma, it->second);
        }
        return it->second.data();
    }

  private:
    void grow_pow(double sigma, std::vector<double>& v) {
        const std::size_t old = v.size();
        v.resize(log_n_.size());
        for (std::size_t i = std::max<std::size_t>(old, 1); i < v.size(); ++i)
            v[i] = std::exp(-sigma * log_n_[i]);
    }
    std::vector<double> log_n_{0.0};
    std::map<double, std::vector<double>> pow_;
};

thread_local TermTable tl_table;

// ---- Euler-Maclaurin -------------------------------------------------------

std::complex<double> zeta_em(std::complex<double> s, double target_rel_err) {
    const double sigma = s.real(), t = s.imag();
    std::size_t n_terms = static_cast<std::size_t>(std::max(16.0, 0.6 * std::abs(t)));
    for (int attempt = 0; attempt < 4; ++attempt) {
        tl_table.ensure(n_terms + 1);
        const double* logs = tl_table.logs();
        const double* pows = tl_table.pows(sigma);
        // main sum with compensated accumulation
        double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
        for (std::size_t n = 1; n < n_terms; ++n) {
            const double phase = -t * logs[n];
            const double vre = pows[n] * std::cos(phase);
            const double vim = pows[n] * std::sin(phase);
            double y = vre - cre, tt = re + y;
            cre = (tt - re) - y;
            re = tt;
            y = vim - cim;
            tt = im + y;
            cim = (tt - im) - y;
            im = tt;
        }
        std::complex<double> acc(re, im);
        const double log_nn = logs[n_terms];
        const std::complex<double> n_pow_minus_s =
            pows[n_terms] * std::exp(std::complex<double>(0.0, -t * log_nn));
        acc += n_pow_minus_s * static_cast<double>(n_terms) / (s - 1.0);  // N^{1-s}/(s-1)
        acc += 0.5 * n_pow_minus_s;
        // Bernoulli corrections: term_k = B_{2k}/(2k)! * (s)_{2k-1} * N^{-s-2k+1}
        std::complex<double> poch = s;  // (s)_1
        std::complex<double> n_factor =
            n_pow_minus_s / static_cast<double>(n_terms);  // N^{-s-1}
        const double inv_n2 = 1.0 / (static_cast<double>(n_terms) * n_terms);
        const double scale = std::abs(acc) + 1.0;
        bool converged = false;
        for (int k = 1; k <= 28; ++k) {
            const std::complex<double> term = bernoulli_over_factorial(k) * poch * n_factor;
            acc += term;
            const double mag = std::abs(term);
            if (mag < 0.25 * target_rel_err * scale) {
                converged = true;
                break;
            }
            poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
            n_factor *= inv_n2;
        }
        if (converged) return acc;
        n_terms *= 2;
    }
    throw NumericalError("zeta_value: accuracy target unachievable at guard limits");
}

// ---- Riemann-Siegel theta and Z --------------------------------------------

double rs_theta(double t) {
    const double lt = std::log(t / kTwoPi);
    const double t2 = t * t;
    return 0.5 * t * lt - 0.5 * t - kPi / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t2) +
           31.0 / (80640.0 * t2 * t2 * t) + 127.0 / (430080.0 * t2 * t2 * t2 * t);
}

// ---- jets for the psi correction function ----------------------------------

constexpr int kJet = 7;  // coefficients 0..6, derivatives up to psi^(6)

struct Jet {
    std::array<double, kJet> a{};
};

Jet jet_const(double v) {
    Jet j;
    j.a[0] = v;
    return j;
}

Jet jet_var(double x0) {
    Jet j;
    j.a[0] = x0;
    j.a[1] = 1.0;
    return j;
}

Jet operator+(const Jet& x, const Jet& y) {
    Jet r;
    for (int i = 0; i < kJet; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

Jet operator-(const Jet& x, const Jet& y) {
    Jet r;
    for (int i = 0; i < kJet; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

Jet operator*(const Jet& x, const Jet& y) {
    Jet r;
    for (int i = 0; i < kJet; ++i)
        for (int j = 0; i + j < kJet; ++j) r.a[i + j] += x.a[i] * y.a[j];
    return r;
}

Jet operator*(double c, const Jet& x) {
    Jet r;
    for (int i = 0; i < kJet; ++i) r.a[i] = c * x.a[i];
    return r;
}

Jet jet_div(const Jet& u, const Jet& v) {
    Jet d;
    for (int n = 0; n < kJet; ++n) {
        double s = u.a[n];
        for (int k = 0; k < n; ++k) s -= d.a[k] * v.a[n - k];
        d.a[n] = s / v.a[0];
    }
    return d;
}

void jet_sincos(const Jet& x, Jet& s, Jet& c) {
    s = Jet{};
    c = Jet{};
    s.a[0] = std::sin(x.a[0]);
    c.a[0] = std::cos(x.a[0]);
    for (int n = 0; n < kJet - 1; ++n) {
        double ds = 0.0, dc = 0.0;
        for (int j = 0; j <= n; ++j) {
            ds += (j + 1) * x.a[j + 1] * c.a[n - j];
            dc -= (j + 1) * x.a[j + 1] * s.a[n - j];
        }
        s.a[n + 1] = ds / (n + 1);
        c.a[n + 1] = dc / (n + 1);
    }
}

// sin(x)/x as a jet (|x0| < 1 in all uses; 12-term Taylor is exact to eps)
Jet jet_sinc(const Jet& x) {
    const Jet x2 = x * x;
    Jet acc = jet_const(0.0);
    double coeff = 1.0;
    // Horner over x^2: S = sum (-1)^m x^{2m} / (2m+1)!
    std::array<double, 12> c{};
    for (int m = 0; m < 12; ++m) {
        c[m] = coeff;
        coeff *= -1.0 / ((2.0 * m + 2.0) * (2.0 * m + 3.0));
    }
    for (int m = 11; m >= 0; --m) acc = jet_const(c[m]) + (x2 * acc);
    return acc;
}

// psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p) with its derivatives
Jet psi_jet(double p) {
    const double d14 = std::abs(p - 0.25), d34 = std::abs(p - 0.75);
    if (std::min(d14, d34) > 0.05) {
        const Jet pj = jet_var(p);
        const Jet arg_num = kTwoPi * ((pj * pj) - pj - jet_const(1.0 / 16.0));
        Jet sn, cn, sd, cd;
        jet_sincos(arg_num, sn, cn);
        jet_sincos(kTwoPi * pj, sd, cd);
        return jet_div(cn, cd);
    }
    // near the removable singularity p0: numerator = sin(2pi g), denominator
    // = -+ sin(2pi u) with u = p - p0, g = (2 p0 - 1) u + u^2; factor out the
    // linear zeros with sin(x)/x
    const double p0 = (d14 <= d34) ? 0.25 : 0.75;
    const double slope = 2.0 * p0 - 1.0;  // -1/2 at 1/4, +1/2 at 3/4
    const Jet u = jet_var(p - p0);
    const Jet g = jet_const(slope) * u + u * u;
    const Jet ratio = (jet_const(slope) + u) * jet_div(jet_sinc(kTwoPi * g), jet_sinc(kTwoPi * u));
    // sign: psi = -(g/u) S(2pi g)/S(2pi u) at p0 = 1/4, + at p0 = 3/4
    return (p0 == 0.25) ? (-1.0 * ratio) : ratio;
}

double rs_z_impl(double t) {
    const double a = std::sqrt(t / kTwoPi);
    const int m = static_cast<int>(a);
    if (m < 1) throw std::invalid_argument("riemann_siegel_z: t too small");
    const double p = a - m;
    const double theta = rs_theta(t);
    tl_table.ensure(m + 1);
    const double* logs = tl_table.logs();
    const double* inv_sqrt = tl_table.pows(0.5);
    double sum = 0.0, comp = 0.0;
    for (int n = 1; n <= m; ++n) {
        const double v = inv_sqrt[n] * std::cos(theta - t * logs[n]);
        const double y = v - comp;
        const double tt = sum + y;
        comp = (tt - sum) - y;
        sum = tt;
    }
    const Jet psi = psi_jet(p);
    const double psi2 = 2.0 * psi.a[2];
    const double psi3 = 6.0 * psi.a[3];
    const double psi6 = 720.0 * psi.a[6];
    const double c0 = psi.a[0];
    const double c1 = -psi3 / (96.0 * kPi * kPi);
    const double c2 = psi2 / (64.0 * kPi * kPi) + psi6 / (18432.0 * kPi * kPi * kPi * kPi);
    const double tau = t / kTwoPi;
    const double correction = std::pow(tau, -0.25) *
                              (c0 + c1 / std::sqrt(tau) + c2 / tau);
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^{m-1}
    return 2.0 * sum + sign * correction;
}

double hardy_z_impl(double t) {
    if (t < 10.0) throw std::invalid_argument("hardy_z: t >= 10 required");
    if (t > kTGuard) throw std::invalid_argument("hardy_z: above the 1e5 guard");
    if (t > kRsCrossover) return rs_z_impl(t);
    const std::complex<double> z = zeta_em({0.5, t}, 1e-12);
    const double theta = rs_theta(t);
    const std::complex<double> rotated = std::exp(std::complex<double>(0.0, theta)) * z;
    return rotated.real();
}

double zero_density(double t) { return std::log(std::max(t, 10.0) / kTwoPi) / kTwoPi; }

}  // namespace

std::complex<double> zeta_value(ComplexPoint s, double target_rel_err) {
    if (s.sigma == 1.0 && s.t == 0.0) throw std::domain_error("zeta_value: pole at s = 1");
    if (std::abs(s.t) > kTGuard)
        throw std::invalid_argument("zeta_value: |t| above the 1e5 desk-scale guard");
    if (target_rel_err < 1e-13)
        throw std::invalid_argument("zeta_value: accuracy target below achievable floor");
    return zeta_em({s.sigma, s.t}, target_rel_err);
}

std::complex<double> chi_factor(ComplexPoint sp) {
    const std::complex<double> s(sp.sigma, sp.t);
    // chi(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s), assembled in log space
    const std::complex<double> log_chi = s * std::log(2.0) + (s - 1.0) * std::log(kPi) +
                                         log_sin(0.5 * kPi * s) + log_gamma(1.0 - s);
    if (!std::isfinite(log_chi.real()) || !std::isfinite(log_chi.imag()))
        throw std::domain_error("chi_factor: pole proximity");
    return std::exp(log_chi);
}

double riemann_siegel_theta(double t) {
    if (t < 10.0) throw std::invalid_argument("riemann_siegel_theta: t >= 10");
    return rs_theta(t);
}

double hardy_z(double t) { return hardy_z_impl(t); }

double riemann_siegel_z(double t) {
    if (t < 10.0) throw std::invalid_argument("riemann_siegel_z: t >= 10");
    return rs_z_impl(t);
}

double count_main_term(double t) {
    const double floor_t = kTwoPi * std::exp(1.0);
    if (!(t > floor_t)) throw std::domain_error("count_main_term: T > 2 pi e required");
    return t / kTwoPi * std::log(t / (kTwoPi * std::exp(1.0)));
}

ZeroList find_zeros(double t_max) {
    if (!(t_max > 10.0) || t_max > 1e4)
        throw std::invalid_argument("find_zeros: T in (10, 1e4] required");
    const double t_lo = 10.0;
    std::vector<std::pair<double, double>> brackets;
    std::size_t prev_count = 0;
    double step = 0.2 / zero_density(t_max);
    int stable = 0;
    for (int refine = 0; refine < 7; ++refine) {
        brackets.clear();
        double t0 = t_lo;
        double z0 = hardy_z_impl(t0);
        while (t0 < t_max) {
            const double t1 = std::min(t0 + step, t_max);
            const double z1 = hardy_z_impl(t1);
            if ((z0 < 0.0 && z1 > 0.0) || (z0 > 0.0 && z1 < 0.0)) brackets.emplace_back(t0, t1);
            t0 = t1;
            z0 = z1;
        }
        if (refine > 0 && brackets.size() == prev_count) {
            if (++stable >= 2) break;
        } else {
            stable = 0;
        }
        prev_count = brackets.size();
        step *= 0.5;
    }
    ZeroList out;
    out.t_min = t_lo;
    out.t_max = t_max;
    out.provenance = ZeroList::Provenance::Computed;
    for (auto [lo, hi] : brackets) {
        double zlo = hardy_z_impl(lo);
        while (hi - lo > 1e-9) {
            const double mid = 0.5 * (lo + hi);
            const double zm = hardy_z_impl(mid);
            if ((zlo < 0.0) == (zm < 0.0)) {
                lo = mid;
                zlo = zm;
            } else {
                hi = mid;
            }
        }
        out.ordinates.push_back(0.5 * (lo + hi));
    }
    std::sort(out.ordinates.begin(), out.ordinates.end());
    // completeness checks are advisory: count vs main term, and gap scan
    if (t_max > kTwoPi * std::exp(1.0)) {
        const double expected = count_main_term(t_max) + 7.0 / 8.0;
        const double tol = 3.0 + std::log(t_max);
        if (std::abs(static_cast<double>(out.ordinates.size()) - expected) > tol)
            out.warnings.push_back("zero count deviates from the counting main term");
    }
    for (std::size_t i = 1; i < out.ordinates.size(); ++i) {
        const double gap =
            (out.ordinates[i] - out.ordinates[i - 1]) * zero_density(out.ordinates[i]);
        if (gap > 3.5) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "suspicious gap in (%.6f, %.6f)",
                          out.ordinates[i - 1], out.ordinates[i]);
            out.warnings.push_back(buf);
        }
    }
    return out;
}

MomentIntegral moment_integral(int k, double t_max, StepControl ctrl) {
    if (k < 1 || k > 3) throw std::invalid_argument("moment_integral: k in {1,2,3}");
    if (!(t_max > 10.0) || t_max > 1e4)
        throw std::invalid_argument("moment_integral: T in (10, 1e4]");
    const double p2k = 2.0 * k;
    auto integrand_low = [&](double t) {
        const std::complex<double> z = zeta_em({0.5, t}, 1e-10);
        return std::pow(std::abs(z), p2k);
    };
    auto integrand_hi = [&](double t) { return std::pow(std::abs(hardy_z_impl(t)), p2k); };

    // panel-doubling error estimate: integrate at the requested width and at
    // half the width, keep the finer value
    auto composite = [&](const std::function<double(double)>& f, double a, double b,
                         double width) {
        const int panels = std::max(1, static_cast<int>((b - a) / width));
        return integrate_panels(f, a, b, panels, ctrl.nodes);
    };
    const double low1 = composite(integrand_low, 0.0, 10.0, ctrl.panel_width);
    const double low2 = composite(integrand_low, 0.0, 10.0, 0.5 * ctrl.panel_width);
    const double hi1 = composite(integrand_hi, 10.0, t_max, ctrl.panel_width);
    const double hi2 = composite(integrand_hi, 10.0, t_max, 0.5 * ctrl.panel_width);
    const double value = (low2 + hi2) / t_max;
    const double err = (std::abs(low2 - low1) + std::abs(hi2 - hi1)) / t_max;
    if (err > ctrl.target_rel_err * std::abs(value))
        throw NumericalError("moment_integral: quadrature error target unmet");
    return {value, err};
}

MeanSquare dirichlet_poly_mean_square(const std::vector<double>& coeffs, double t_max) {
    if (coeffs.empty()) throw std::invalid_argument("dirichlet_poly_mean_square: N >= 1");
    if (!(t_max > 0.0)) throw std::invalid_argument("dirichlet_poly_mean_square: T > 0");
    const std::size_t n = coeffs.size();
    double diag = 0.0;
    for (double a : coeffs) diag += a * a;
    diag *= t_max;
    double off = 0.0;
    for (std::size_t m = 1; m <= n; ++m)
        for (std::size_t l = m + 1; l <= n; ++l) {
            const double am = coeffs[m - 1], al = coeffs[l - 1];
            if (am == 0.0 || al == 0.0) continue;
            const double lr = std::log(static_cast<double>(m) / static_cast<double>(l));
            off += 2.0 * am * al * std::sin(t_max * lr) / lr;
        }
    return {diag + off, diag};
}

std::complex<double> farmer_rhs(std::complex<double> u, std::complex<double> v,
                                std::complex<double> a, std::complex<double> b, double t_max) {
    if (std::abs(u + v) == 0.0 || std::abs(a + b) == 0.0)
        throw std::domain_error("farmer_rhs: degenerate denominator");
    if (!(t_max > 1.0)) throw std::domain_error("farmer_rhs: T > 1");
    const std::complex<double> damping = 1.0 - std::exp(-(u + v) * std::log(t_max));
    return 1.0 + (u - a) * (v - b) / ((u + v) * (a + b)) * damping;
}

std::complex<double> farmer_lhs(std::complex<double> u, std::complex<double> v,
                                std::complex<double> a, std::complex<double> b, double t_max,
                                StepControl ctrl) {
    if (!(t_max > 10.0) || t_max > 1e4) throw std::invalid_argument("farmer_lhs: T in (10, 1e4]");
    if (a.real() <= 0.0 || b.real() <= 0.0 || u.real() <= 0.0 || v.real() <= 0.0)
        throw std::domain_error("farmer_lhs: offsets need positive real part");
    auto term = [&](double t, std::complex<double> off, bool reflected) {
        // s + off at s = 1/2 + it, or 1 - s + off
        const double sigma = 0.5 + off.real();
        const double ord = reflected ? -(t - off.imag()) : (t + off.imag());
        return zeta_em({sigma, ord}, 1e-10);
    };
    auto integrand = [&](double t) {
        const std::complex<double> num = term(t, u, false) * term(t, v, true);
        const std::complex<double> den = term(t, a, false) * term(t, b, true);
        if (std::abs(den) < 1e-12)
            throw NumericalError("farmer_lhs: integrand singularity near t = " +
                                 std::to_string(t));
        return num / den;
    };
    const int panels = std::max(1, static_cast<int>(t_max / ctrl.panel_width));
    const QuadRule& rule = gauss_legendre(ctrl.nodes);
    std::complex<double> acc(0.0, 0.0);
    const double w = t_max / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * w, half = 0.5 * w;
        for (int i = 0; i < ctrl.nodes; ++i)
            acc += rule.weights[i] * integrand(mid + half * rule.nodes[i]);
    }
    return acc * (0.5 * w) / t_max;
}

ZeroList load_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_zeros: cannot open " + path);
    ZeroList out;
    out.provenance = ZeroList::Provenance::Loaded;
    out.path = path;
    std::string line;
    std::size_t line_no = 0;
    double prev = 0.0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        char* end = nullptr;
        const double v = std::strtod(line.c_str(), &end);
        if (end == line.c_str() || !std::isfinite(v))
            throw std::invalid_argument("load_zeros: malformed line " + std::to_string(line_no));
        if (v <= 0.0)
            throw std::invalid_argument("load_zeros: nonpositive ordinate at line " +
                                        std::to_string(line_no));
        if (v <= prev)
            throw std::invalid_argument("load_zeros: unsorted input at line " +
                                        std::to_string(line_no));
        out.ordinates.push_back(v);
        prev = v;
    }
    if (!out.ordinates.empty()) {
        out.t_min = out.ordinates.front();
        out.t_max = out.ordinates.back();
    }
    return out;
}

void save_zeros(const ZeroList& list, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("save_zeros: cannot open " + path);
    char buf[64];
    for (double g : list.ordinates) {
        const int len = std::snprintf(buf, sizeof buf, "%.17g", g);
        out.write(buf, len);
        out << '\n';
    }
}

}  // namespace rmt
