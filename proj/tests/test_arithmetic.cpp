#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numeric>

#include "rmt/arithmetic.hpp"
#include "rmt/rng.hpp"
#include "rmt/special.hpp"

using namespace rmt;
using Float50 = boost::multiprecision::cpp_bin_float_50;

TEST_CASE("d_k values and multiplicativity") {
    CHECK(d_k(2, 6) == 4);   // divisor count of 6
    CHECK(d_k(3, 4) == 6);   // ordered 3-factorizations of 4
    CHECK(d_k(1, 360360) == 1);
    for (int k = 1; k <= 6; ++k) CHECK(d_k(k, 1) == 1);
    CHECK(d_k(2, 12) == 6);
    CHECK(d_k(4, 2) == 4);
    CHECK_THROWS(d_k(2, 2000000000000ULL));

    // fuzz multiplicativity over random coprime pairs, k <= 6
    RandomStream rng(2024, 0);
    int tested = 0;
    while (tested < 1000) {
        const std::uint64_t m = 2 + rng.next_u64() % 5000;
        const std::uint64_t n = 2 + rng.next_u64() % 5000;
        if (std::gcd(m, n) != 1) continue;
        const int k = 1 + static_cast<int>(rng.next_u64() % 6);
        CHECK(d_k(k, m * n) == d_k(k, m) * d_k(k, n));
        ++tested;
    }
}

TEST_CASE("Dirichlet-series partial sums bracket zeta(2)^2") {
    // sum_{n<=N} d_2(n)/n^2 increases to zeta(2)^2 with tail < 2 log N / N
    const double z2 = kPi * kPi / 6.0;
    double partial1000 = 0.0;
    for (int n = 1; n <= 1000; ++n)
        partial1000 += static_cast<double>(d_k(2, n)) / (static_cast<double>(n) * n);
    double partial2000 = partial1000;
    for (int n = 1001; n <= 2000; ++n)
        partial2000 += static_cast<double>(d_k(2, n)) / (static_cast<double>(n) * n);
    const double target = z2 * z2;
    CHECK(partial1000 < target);
    CHECK(partial2000 > partial1000);
    CHECK(partial2000 < target);
    CHECK(target - partial1000 < 2.0 * std::log(1000.0) / 1000.0 + 1e-3);
}

TEST_CASE("inner series: closed form equals direct truncation") {
    for (int k = 1; k <= 6; ++k) {
        for (double p : {2.0, 3.0, 5.0, 97.0}) {
            const double direct =
                std::pow(1.0 - 1.0 / p, k * k) * zeta_inner_series_direct(k, p);
            CHECK(zeta_local_factor(k, p) == doctest::Approx(direct).epsilon(1e-13));
        }
    }
}

TEST_CASE("a_k for the zeta family") {
    const auto a1 = a_k_zeta(1, 100000);
    CHECK(std::abs(a1.value - 1.0) < 1e-12);
    CHECK(a1.tail_bound < 1e-12);

    // local factor for k = 2 collapses to 1 - p^{-2}, so a_2 = 6/pi^2
    const auto a2 = a_k_zeta(2, 100000);
    CHECK(std::abs(a2.value - 6.0 / (kPi * kPi)) < 1e-8);
    CHECK(zeta_local_factor(2, 7.0) == doctest::Approx(1.0 - 1.0 / 49.0).epsilon(1e-15));

    // Ingham consistency: g_2 a_2 / 4! = 1/(2 pi^2)
    const double c2 = 2.0 * a2.value / 24.0;
    CHECK(std::abs(c2 - 1.0 / (2.0 * kPi * kPi)) < 1e-9);

    // monotone refinement: doubling P stays within the coarser tail bound
    for (int k : {2, 3, 4}) {
        const auto coarse = a_k_zeta(k, 10000);
        const auto fine = a_k_zeta(k, 100000);
        CHECK(std::abs(coarse.value - fine.value) < coarse.tail_bound);
    }
}

TEST_CASE("quadratic family local factor and refinement") {
    // k = 0 formally gives 1 at every prime
    CHECK(quadratic_local_factor(0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(quadratic_local_factor(0, 101.0) == doctest::Approx(1.0).epsilon(1e-15));

    // 50-digit oracle for the k = 1 local factor at p = 2
    {
        const Float50 p(2), one(1);
        const Float50 rp = sqrt(p);
        const Float50 bracket =
            (pow(one - one / rp, -1) + pow(one + one / rp, -1)) / 2 + one / p;
        const Float50 loc = pow(one - one / p, 1) / (one + one / p) * bracket;
        CHECK(quadratic_local_factor(1, 2.0) ==
              doctest::Approx(loc.convert_to<double>()).epsilon(1e-14));
    }
    for (int k : {1, 2, 3, 4}) {
        const auto coarse = a_k_quadratic(k, 10000);
        const auto fine = a_k_quadratic(k, 100000);
        CHECK(std::abs(coarse.value - fine.value) < coarse.tail_bound);
    }
}

TEST_CASE("Hecke-family arithmetic factors") {
    const auto a1 = a_hecke(1);
    CHECK(std::abs(a1.value - kPi * kPi / 6.0) < 1e-12);

    // product identity: prod (1 + p^{-2}) = zeta(2)/zeta(4)
    const double z2 = kPi * kPi / 6.0;
    const double z4 = std::pow(kPi, 4) / 90.0;
    const auto a2 = a_hecke(2);
    CHECK(std::abs(a2.value - z2 * z2 * z2 / z4) < 1e-8);

    // 50-digit oracle for the a_3 local factor at p = 2
    {
        const Float50 p(2), one(1);
        const Float50 loc =
            (one - one / p) * (one + one / p + 4 / (p * p) + one / (p * p * p) +
                               one / (p * p * p * p));
        CHECK(hecke_local_factor(3, 2.0) ==
              doctest::Approx(loc.convert_to<double>()).epsilon(1e-14));
    }
    CHECK_THROWS(a_hecke(5));
    for (int k : {2, 3, 4}) {
        const auto coarse = a_hecke(k, 10000);
        const auto fine = a_hecke(k, 100000);
        CHECK(std::abs(coarse.value - fine.value) < coarse.tail_bound);
    }
}

TEST_CASE("conjecture coefficients are the printed exact rationals") {
    // quadratic family, matching factors 1, 2, 16, 768 with their factorials
    CHECK(quadratic_moment_coefficient(1) == BigRational(1, 2));
    CHECK(quadratic_moment_coefficient(2) == BigRational(2, 6) / BigRational(8, 1));
    CHECK(quadratic_moment_coefficient(3) == BigRational(16, 720) / BigRational(64, 1));
    CHECK(quadratic_moment_coefficient(4) == BigRational(768, 3628800) / BigRational(1024, 1));
    CHECK(quadratic_moment_coefficient(3) == BigRational(1, 2880));
    CHECK(quadratic_moment_coefficient(4) == BigRational(1, 4838400));

    // Hecke family, factors 1, 2, 8, 128
    CHECK(hecke_moment_coefficient(1) == BigRational(1));
    CHECK(hecke_moment_coefficient(2) == BigRational(2, 2));
    CHECK(hecke_moment_coefficient(3) == BigRational(8, 6) / BigRational(8, 1));
    CHECK(hecke_moment_coefficient(4) == BigRational(128, 720) / BigRational(64, 1));
    CHECK(hecke_moment_coefficient(3) == BigRational(1, 6));
    CHECK(hecke_moment_coefficient(4) == BigRational(1, 360));
}

TEST_CASE("moment right-hand sides") {
    // k = 1: a_1 log T exactly
    CHECK(zeta_moment_rhs(1, 1000.0) == doctest::Approx(std::log(1000.0)).epsilon(1e-10));
    // k = 2: (1/2pi^2) log^4 T
    CHECK(zeta_moment_rhs(2, 3000.0) ==
          doctest::Approx(std::pow(std::log(3000.0), 4) / (2.0 * kPi * kPi)).epsilon(1e-7));
    // ratio to the diagonal asymptotic is exactly g_k by construction
    for (int k : {1, 2, 3}) {
        const double ratio =
            zeta_moment_rhs(k, 500.0) / diagonal_dirichlet_asymptotic(k, 500.0);
        CHECK(ratio == doctest::Approx(static_cast<double>(g_k(k))).epsilon(1e-12));
    }
    // diagonal asymptotic k = 1: log x
    CHECK(diagonal_dirichlet_asymptotic(1, 100.0) ==
          doctest::Approx(std::log(100.0)).epsilon(1e-10));
    // quadratic k = 1 matches a_1 log(D^{1/2})
    const double a1q = a_k_quadratic(1).value;
    CHECK(quadratic_moment_rhs(1, 10000.0) ==
          doctest::Approx(a1q * std::log(std::sqrt(10000.0))).epsilon(1e-10));
    // Hecke k = 1: a_1 with no log factor
    CHECK(hecke_moment_rhs(1, 50.0) == doctest::Approx(a_hecke(1).value).epsilon(1e-10));
    CHECK_THROWS(zeta_moment_rhs(1, 10.0));
    CHECK_THROWS(quadratic_moment_rhs(1, 2.0));
}
