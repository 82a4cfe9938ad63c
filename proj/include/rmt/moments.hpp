// moments.hpp
//
// Closed-form moments of characteristic polynomials over U(N), USp(2N) and
// SO(2N), the Barnes-G limit ratio, the integer constants g_k, the Selberg
// integral, and Monte Carlo cross-validation.
//
// All gamma-ratio products are evaluated in log space with compensated
// summation; integer paths use exact big-integer arithmetic.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

#include "rmt/ensembles.hpp"

namespace rmt {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// M_{U,N}(s) = prod_{j=1}^{N} Gamma(j) Gamma(j+2s) / Gamma(j+s)^2,  s > -1/2
double moment_u(int n, double s);

// M_{Sp,2N}(s) = 2^{2Ns} prod_{j=1}^{N} Gamma(1+N+j) Gamma(1/2+s+j)
//                                        / (Gamma(1/2+j) Gamma(1+s+N+j))
double moment_sp(int two_n, double s);

// M_{SO,2N}(s) = 2^{2Ns} prod_{j=1}^{N} Gamma(N+j-1) Gamma(s+j-1/2)
//                                        / (Gamma(j-1/2) Gamma(s+j+N-1))
double moment_so_even(int two_n, double s);

// lim_N M_{U,N}(s)/N^{s^2} = G(1+s)^2 / G(1+2s); the integer-k product path
// prod_{j=0}^{k-1} j!/(j+k)! is used when s is a nonnegative integer
double limit_ratio_u(double s);
BigRational limit_ratio_u_exact(int k);  // prod_{j<k} j!/(j+k)!

// g_k = (k^2)! prod_{j=0}^{k-1} j!/(j+k)!  as an exact integer
BigInt g_k(int k);

// Selberg's integral in the [-1,1]^n normalization:
//   2^{gamma n(n-1) + n(alpha+beta-1)} prod_{j=0}^{n-1}
//     Gamma(1+gamma+j gamma) Gamma(alpha+j gamma) Gamma(beta+j gamma)
//     / (Gamma(1+gamma) Gamma(alpha+beta+gamma(n+j-1)))
double selberg(int n, double alpha, double beta, double gamma);

// Monte Carlo moment of the characteristic polynomial: mean and standard
// error of |det(A - I e(-x))|^{2s} for U, |det(A - I)|^{s} for Sp/SO
struct MonteCarloMoment {
    double estimate;
    double stderr_;
    std::uint64_t count;
};
MonteCarloMoment mc_moment(const SymmetryClass& cls, double s, double phase_x,
                           std::uint64_t count, std::uint64_t seed, int threads = 1);

}  // namespace rmt
