// arithmetic.hpp
//
// Divisor-coefficient machinery d_k(n), certified Euler-product arithmetic
// factors for the zeta, quadratic-character, and Hecke families, and the
// moment-conjecture right-hand sides assembled from them.
//
// Every Euler product carries a rigorous-style tail bound derived from the
// log-factor series: |log L(1/p)| <= C / p^2, summed over p > P.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rmt/moments.hpp"  // BigInt / BigRational

namespace rmt {

// d_k(n): coefficient of n^{-s} in zeta(s)^k; multiplicative with
// d_k(p^j) = C(k+j-1, j).  Guarded against n > 10^12 and 64-bit overflow.
std::uint64_t d_k(int k, std::uint64_t n);

struct EulerProductResult {
    double value;
    std::uint64_t prime_cutoff;
    double tail_bound;  // |true - value| bounded by this
    std::string family;
};

// local factors at a single prime (exposed for oracle tests)
double zeta_local_factor(int k, double p);
double quadratic_local_factor(int k, double p);
double hecke_local_factor(int k, double p);

// a_k for the zeta family: prod_p (1-1/p)^{k^2} sum_j d_k(p^j)^2 p^{-j};
// the inner series is collapsed to its closed form
// (1-1/p)^{(k-1)^2} sum_{m<k} C(k-1,m)^2 p^{-m}
EulerProductResult a_k_zeta(int k, std::uint64_t prime_cutoff = 100000);

// direct truncated-series evaluation of the inner sum (independent route,
// summed until the geometric ratio bound certifies relative 1e-15)
double zeta_inner_series_direct(int k, double p);

// a_k for the quadratic family (symplectic symmetry)
EulerProductResult a_k_quadratic(int k, std::uint64_t prime_cutoff = 100000);

// a_k for the weight-2 Hecke family, tabulated k = 1..4
EulerProductResult a_hecke(int k, std::uint64_t prime_cutoff = 100000);

// exact coefficient paths for the conjecture assemblies
BigRational quadratic_moment_coefficient(int k);  // prod_{l=1}^{k} l!/(2l)!
BigRational hecke_moment_coefficient(int k);      // 2^{k-1} prod_{l=1}^{k-1} l!/(2l)!

// (g_k a_k / Gamma(1+k^2)) (log T)^{k^2}
double zeta_moment_rhs(int k, double t, std::uint64_t prime_cutoff = 100000);

// prod_{l<=k} l!/(2l)! * a_k * (log D)^{k(k+1)/2}
double quadratic_moment_rhs(int k, double d, std::uint64_t prime_cutoff = 100000);

// 2^{k-1} prod_{l<k} l!/(2l)! * a_k * (log q)^{k(k-1)/2}
double hecke_moment_rhs(int k, double q, std::uint64_t prime_cutoff = 100000);

// a_k (log x)^{k^2} / Gamma(1+k^2)
double diagonal_dirichlet_asymptotic(int k, double x, std::uint64_t prime_cutoff = 100000);

// primes up to limit (shared sieve)
const std::vector<std::uint32_t>& primes_up_to(std::uint32_t limit);

}  // namespace rmt
