#include "rmt/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace rmt {

double sinc_pi(double x) {
    const double a = kPi * x;
    if (std::abs(a) < 1e-4) {
        const double a2 = a * a;
        return 1.0 - a2 / 6.0 * (1.0 - a2 / 20.0);
    }
    return std::sin(a) / a;
}

std::complex<double> unit_circle(double x) {
    const double a = kTwoPi * x;
    return {std::cos(a), std::sin(a)};
}

namespace {

// Lanczos g = 7, 9 coefficients
constexpr double kLanczos[9] = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

std::complex<double> log_gamma_core(std::complex<double> z) {
    // valid for Re z >= 0.5
    z -= 1.0;
    std::complex<double> a(kLanczos[0], 0.0);
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + 7.5;
    return 0.91893853320467274178 /* log sqrt(2 pi) */
           + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

std::complex<double> log_sin(std::complex<double> z) {
    const std::complex<double> i(0.0, 1.0);
    // sin z = (e^{iz} - e^{-iz}) / 2i; factor out the dominant exponential
    if (z.imag() > 0.0) {
        // sin z = -e^{-iz} (1 - e^{2iz}) / 2i; the i pi accounts for the minus sign
        return -i * z + std::log(1.0 - std::exp(2.0 * i * z)) - std::log(2.0 * i) + kPi * i;
    }
    return i * z + std::log(1.0 - std::exp(-2.0 * i * z)) - std::log(2.0 * i);
}

std::complex<double> log_gamma(std::complex<double> z) {
    if (z.real() >= 0.5) return log_gamma_core(z);
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(kPi) - log_sin(kPi * z) - log_gamma_core(1.0 - z);
}

namespace {

constexpr int kZetaEvenMax = 64;

// exact B_{2k} for k = 1..15 as rationals
constexpr double kBernNum[15] = {1.0,     -1.0,          1.0,       -1.0,   5.0,
                                 -691.0,  7.0,           -3617.0,   43867.0, -174611.0,
                                 854513.0, -236364091.0, 8553103.0, -23749461029.0,
                                 8615841276005.0};
constexpr double kBernDen[15] = {6.0,   30.0,  42.0, 30.0, 66.0, 2730.0, 6.0, 510.0,
                                 798.0, 330.0, 138.0, 2730.0, 6.0, 870.0, 14322.0};

struct EvenZetaTables {
    std::array<double, kZetaEvenMax + 1> zeta{};
    std::array<double, kZetaEvenMax + 1> bern_over_fact{};
};

EvenZetaTables build_tables() {
    EvenZetaTables t;
    for (int k = 1; k <= kZetaEvenMax; ++k) {
        if (k <= 15) {
            // B_{2k}/(2k)! in extended precision, then
            // zeta(2k) = |B_{2k}|/(2k)! * (2 pi)^{2k} / 2
            const long double bof =
                static_cast<long double>(kBernNum[k - 1]) / kBernDen[k - 1] /
                std::tgammal(2.0L * k + 1.0L);
            t.bern_over_fact[k] = static_cast<double>(bof);
            const long double two_pi_l = 6.2831853071795864769252867665590058L;
            long double p = 1.0L;
            for (int m = 0; m < 2 * k; ++m) p *= two_pi_l;
            t.zeta[k] = static_cast<double>((bof < 0 ? -bof : bof) * p / 2.0L);
        } else {
            // the Dirichlet series with 40 terms is exact to double here
            double acc = 0.0;
            for (int n = 40; n >= 1; --n) acc += std::pow(static_cast<double>(n), -2 * k);
            t.zeta[k] = acc;
            const double sign = (k % 2 == 1) ? 1.0 : -1.0;
            t.bern_over_fact[k] = sign * 2.0 * acc * std::exp(-2.0 * k * std::log(kTwoPi));
        }
    }
    return t;
}

const EvenZetaTables g_even_tables = build_tables();

}  // namespace

double zeta_even(int k) {
    if (k < 1 || k > kZetaEvenMax) throw std::invalid_argument("zeta_even: k out of range");
    return g_even_tables.zeta[k];
}

double bernoulli_over_factorial(int k) {
    if (k < 1 || k > kZetaEvenMax)
        throw std::invalid_argument("bernoulli_over_factorial: k out of range");
    return g_even_tables.bern_over_fact[k];
}

namespace {

// log A (Glaisher-Kinkelin), = 1/12 - zeta'(-1)
constexpr double kLogGlaisher = 0.24875447703378424930;

// DLMF 5.17.5 asymptotic for log G(z+1), valid for large z
double log_barnes_g1p_asymptotic(double z) {
    const double lz = std::log(z);
    double s = 0.25 * z * z + z * std::lgamma(z + 1.0) -
               (0.5 * z * (z + 1.0) + 1.0 / 12.0) * lz - kLogGlaisher;
    // Bernoulli tail: sum B_{2k+2} / (2k (2k+1) (2k+2) z^{2k})
    static const double b[] = {-1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0};
    double zp = z * z;
    for (int k = 1; k <= 4; ++k) {
        s += b[k - 1] / (2.0 * k * (2.0 * k + 1.0) * (2.0 * k + 2.0) * zp);
        zp *= z * z;
    }
    return s;
}

}  // namespace

double log_barnes_g(double z) {
    if (!(z > 0.0)) throw std::domain_error("log_barnes_g: requires z > 0");
    // climb to the asymptotic regime with G(z+1) = Gamma(z) G(z)
    double acc = 0.0;
    double x = z;
    while (x < 33.0) {
        acc -= std::lgamma(x);
        x += 1.0;
    }
    return acc + log_barnes_g1p_asymptotic(x - 1.0);
}

double barnes_g_ratio(double s) {
    if (!(s > -0.5)) throw std::domain_error("barnes_g_ratio: requires s > -1/2");
    return std::exp(2.0 * log_barnes_g(1.0 + s) - log_barnes_g(1.0 + 2.0 * s));
}

}  // namespace rmt
