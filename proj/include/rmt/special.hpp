// special.hpp
//
// Shared special-function kit: normalized sinc, unit-circle exponential,
// complex log-gamma (Lanczos), log-sin without overflow, Bernoulli-number
// ratios for Euler-Maclaurin, and the Barnes G-function in log space.

#pragma once

#include <complex>

namespace rmt {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// sin(pi x) / (pi x), = 1 at x = 0
double sinc_pi(double x);

// e(x) = exp(2 pi i x)
std::complex<double> unit_circle(double x);

// principal-branch-agnostic complex log Gamma (imaginary part may differ from
// the continuous branch by a multiple of 2 pi; exp(log_gamma) is exact)
std::complex<double> log_gamma(std::complex<double> z);

// log(sin z) valid for large |Im z| (no intermediate overflow); branch as above
std::complex<double> log_sin(std::complex<double> z);

// B_{2k} / (2k)!  for k >= 1, via the even zeta values
double bernoulli_over_factorial(int k);

// zeta(2k) for k >= 1
double zeta_even(int k);

// log G(z) for real z > 0 (Barnes G); G(1) = G(2) = 1, G(z+1) = Gamma(z) G(z)
double log_barnes_g(double z);

// G(1+s)^2 / G(1+2s) evaluated in log space, s > -1/2
double barnes_g_ratio(double s);

}  // namespace rmt
