#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "rmt/arithmetic.hpp"
#include "rmt/special.hpp"
#include "rmt/statistics.hpp"
#include "rmt/zeta.hpp"

using namespace rmt;

TEST_CASE("classical values and guards") {
    CHECK(std::abs(zeta_value({2.0, 0.0}).real() - kPi * kPi / 6.0) < 1e-12);
    CHECK(std::abs(zeta_value({2.0, 0.0}).imag()) < 1e-14);
    CHECK(zeta_value({0.5, 0.0}).real() == doctest::Approx(-1.4603545088095868).epsilon(1e-12));
    CHECK(zeta_value({3.0, 0.0}).real() == doctest::Approx(1.2020569031595943).epsilon(1e-12));
    CHECK_THROWS(zeta_value({1.0, 0.0}));
    CHECK_THROWS(zeta_value({0.5, 2e5}));
    CHECK_THROWS(zeta_value({0.5, 100.0}, 1e-15));
}

TEST_CASE("functional equation and chi") {
    // |zeta(s) - chi(s) zeta(1-s)| small on a grid avoiding poles
    for (double sigma : {0.3, 0.5, 0.8}) {
        for (double t : {2.0, 5.0, 17.0}) {
            const auto lhs = zeta_value({sigma, t});
            const auto rhs = chi_factor({sigma, t}) * zeta_value({1.0 - sigma, -t});
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
    }
    for (double t : {5.0, 50.0, 500.0})
        CHECK(std::abs(std::abs(chi_factor({0.5, t})) - 1.0) < 1e-10);
    // chi(s) chi(1-s) = 1
    const auto prod = chi_factor({0.4, 3.0}) * chi_factor({0.6, -3.0});
    CHECK(std::abs(prod - std::complex<double>(1.0, 0.0)) < 1e-10);
}

TEST_CASE("Hardy Z: reality, EM agreement, and the first zero bracket") {
    for (double t : {20.0, 100.0, 1000.0}) {
        const double az = std::abs(zeta_value({0.5, t}));
        CHECK(std::abs(std::abs(hardy_z(t)) - az) < 1e-8);
    }
    CHECK(hardy_z(14.0) * hardy_z(15.0) < 0.0);  // sign change across gamma_1
    CHECK_THROWS(hardy_z(5.0));
}

TEST_CASE("Riemann-Siegel main sum + corrections vs Euler-Maclaurin") {
    // the C0..C2 remainder is O((t/2pi)^{-9/4}): ~1e-9 past the crossover
    for (double t : {8100.0, 9000.0, 20000.0, 50000.0}) {
        const double rs = riemann_siegel_z(t);
        const double em = std::abs(zeta_value({0.5, t}));
        CHECK(std::abs(std::abs(rs) - em) < 2e-9);
    }
    // looser agreement holds well below the crossover
    for (double t : {300.0, 1000.0, 3000.0}) {
        const double rs = riemann_siegel_z(t);
        const double em = std::abs(zeta_value({0.5, t}));
        CHECK(std::abs(std::abs(rs) - em) < 1e-4);
    }
}

TEST_CASE("count_main_term") {
    const double e2 = std::exp(2.0);
    CHECK(count_main_term(kTwoPi * e2) == doctest::Approx(e2).epsilon(1e-13));
    CHECK(count_main_term(100.0) == doctest::Approx(28.127).epsilon(1e-3));
    // monotone increasing beyond the validity floor
    double prev = count_main_term(20.0);
    for (double t = 25.0; t < 200.0; t += 5.0) {
        CHECK(count_main_term(t) > prev);
        prev = count_main_term(t);
    }
    CHECK_THROWS(count_main_term(10.0));
}

TEST_CASE("find_zeros: first ordinate, counts, unfolded gaps") {
    const ZeroList z20 = find_zeros(20.0);
    REQUIRE(z20.ordinates.size() == 1);
    CHECK(z20.ordinates[0] > 14.10);
    CHECK(z20.ordinates[0] < 14.17);
    CHECK(z20.ordinates[0] == doctest::Approx(14.134725141734693).epsilon(1e-9));

    const ZeroList z100 = find_zeros(100.0);
    CHECK(std::abs(static_cast<double>(z100.ordinates.size()) - count_main_term(100.0)) <=
          3.0);
    CHECK(z100.ordinates.size() == 29);  // the classical count to height 100
    z100.validate();

    const ZeroList z500 = find_zeros(500.0);
    CHECK(std::abs(static_cast<double>(z500.ordinates.size()) - count_main_term(500.0)) <
          3.0 + std::log(500.0));
    const UnfoldedPoints up = unfold_zeros(z500, ZeroUnfoldMode::Density);
    CHECK(std::abs(up.mean_gap() - 1.0) < 0.05);
    CHECK(z500.warnings.empty());

    // paper vs density mode differ pointwise by log(g)/log(g/(2 pi e))
    const UnfoldedPoints paper = unfold_zeros(z500, ZeroUnfoldMode::Paper);
    for (std::size_t i = 1; i < z500.ordinates.size(); i += 37) {
        const double g = z500.ordinates[i];
        const double factor = std::log(g) / std::log(g / (kTwoPi * std::exp(1.0)));
        CHECK(paper.points[i] == doctest::Approx(up.points[i] * factor).epsilon(1e-12));
    }
}

TEST_CASE("zero-certification: Z changes sign across every located zero") {
    const ZeroList z = find_zeros(120.0);
    for (double g : z.ordinates) {
        CHECK(hardy_z(g - 1e-9) * hardy_z(g + 1e-9) <= 0.0);
    }
}

TEST_CASE("moment integrals at modest height") {
    const MomentIntegral m1 = moment_integral(1, 500.0);
    // loose sanity: the second moment mean is near log(T/2pi) at small T
    CHECK(m1.value > 0.8 * std::log(500.0 / kTwoPi));
    CHECK(m1.value < 1.6 * std::log(500.0 / kTwoPi));
    CHECK(m1.quad_error < 1e-3 * m1.value);
    const MomentIntegral m2 = moment_integral(2, 500.0);
    CHECK(m2.value >= m1.value * m1.value);  // Cauchy-Schwarz
    CHECK_THROWS(moment_integral(4, 500.0));
    CHECK_THROWS(moment_integral(1, 5.0));
}

TEST_CASE("Dirichlet polynomial mean square") {
    // single coefficient: exact = diagonal = T
    const auto single = dirichlet_poly_mean_square({1.0}, 137.0);
    CHECK(single.exact == doctest::Approx(137.0));
    CHECK(single.diagonal == doctest::Approx(137.0));

    // a_n = d_2(n)/sqrt(n), N = 50, T = 5000: off-diagonal within the
    // mean-value theorem's O(n) penalty, bounded by 2 pi sum n a_n^2
    std::vector<double> coeffs;
    double penalty = 0.0;
    for (int n = 1; n <= 50; ++n) {
        const double a = static_cast<double>(d_k(2, n)) / std::sqrt(static_cast<double>(n));
        coeffs.push_back(a);
        penalty += n * a * a;
    }
    const auto ms = dirichlet_poly_mean_square(coeffs, 5000.0);
    CHECK(std::abs(ms.exact - ms.diagonal) < 2.0 * kPi * penalty);
    CHECK(std::abs(ms.exact - ms.diagonal) / ms.diagonal < 0.5);

    // T -> infinity trend: exact/T approaches sum a_n^2
    const auto far = dirichlet_poly_mean_square(coeffs, 2e6);
    double sum_sq = 0.0;
    for (double a : coeffs) sum_sq += a * a;
    CHECK(far.exact / 2e6 == doctest::Approx(sum_sq).epsilon(0.01));

    // partial sums vs the diagonal asymptotic (k = 2).  The leading term
    // alone is far below the truth at desk scale (lower-order log powers
    // dominate): the measured ratio is 3.103 at x = 1e4, decreasing slowly
    // toward 1.  Freeze the sieve-verified value and assert the trend.
    auto partial_sum = [](int x) {
        double s = 0.0;
        for (int n = 1; n <= x; ++n) {
            const double d = static_cast<double>(d_k(2, n));
            s += d * d / static_cast<double>(n);
        }
        return s;
    };
    const double partial4 = partial_sum(10000);
    CHECK(partial4 == doctest::Approx(565.6464099580007).epsilon(1e-9));
    const double r3 = partial_sum(1000) / diagonal_dirichlet_asymptotic(2, 1e3);
    const double r4 = partial4 / diagonal_dirichlet_asymptotic(2, 1e4);
    CHECK(r4 > 1.0);
    CHECK(r4 < r3);  // approaching the asymptotic from above
}

TEST_CASE("Farmer ratio: degenerate cases and symmetry") {
    const std::complex<double> u(0.02, 0.0), v(0.03, 0.0), a(0.05, 0.0), b(0.06, 0.0);
    // a = u, b = v collapses both sides to 1 exactly
    CHECK(farmer_rhs(u, v, u, v, 2000.0) == std::complex<double>(1.0, 0.0));
    const auto lhs_triv = farmer_lhs(u, v, u, v, 100.0);
    CHECK(lhs_triv.real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(lhs_triv.imag() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(farmer_rhs(u, u, u, u, 500.0) == std::complex<double>(1.0, 0.0));
    CHECK_THROWS(farmer_rhs(u, -u, a, b, 100.0));

    // swapping (u,a) <-> (v,b) conjugates the integral (s -> 1 - conj(s))
    const auto one = farmer_lhs(u, v, a, b, 150.0);
    const auto two = farmer_lhs(v, u, b, a, 150.0);
    CHECK(std::abs(one - std::conj(two)) < 1e-6 * std::abs(one));
}

TEST_CASE("zero files round trip and reject malformed input") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "rmt_zero_files";
    fs::create_directories(dir);
    const ZeroList z = find_zeros(60.0);
    const std::string path = (dir / "zeros.txt").string();
    save_zeros(z, path);
    const ZeroList back = load_zeros(path);
    REQUIRE(back.ordinates.size() == z.ordinates.size());
    for (std::size_t i = 0; i < z.ordinates.size(); ++i)
        CHECK(back.ordinates[i] == z.ordinates[i]);  // %.17g round trip
    CHECK(back.provenance == ZeroList::Provenance::Loaded);
    CHECK(back.path == path);

    // decreasing pair rejected with a line number
    const std::string bad_path = (dir / "bad.txt").string();
    {
        std::FILE* f = std::fopen(bad_path.c_str(), "w");
        std::fputs("14.13\n21.02\n20.00\n", f);
        std::fclose(f);
    }
    try {
        load_zeros(bad_path);
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    fs::remove_all(dir);
}
