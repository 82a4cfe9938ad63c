#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rmt/ensembles.hpp"
#include "rmt/special.hpp"

using namespace rmt;

namespace {

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
}

double stderr_of(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (v.size() - 1.0) / v.size());
}

}  // namespace

TEST_CASE("class invariants are enforced") {
    CHECK_THROWS(SymmetryClass(Group::SpecialOrthogonalEven, 5));
    CHECK_THROWS(SymmetryClass(Group::SpecialOrthogonalOdd, 4));
    CHECK_THROWS(SymmetryClass(Group::UnitarySymplectic, 3));
    CHECK_THROWS(SymmetryClass(Group::Unitary, 0));
    CHECK_THROWS(sample_haar(SymmetryClass(Group::Unitary, 201), 1, 0));
}

TEST_CASE("structural residuals for every group") {
    const SymmetryClass classes[] = {
        {Group::Unitary, 1},               {Group::Unitary, 7},
        {Group::SpecialOrthogonalEven, 4}, {Group::SpecialOrthogonalEven, 8},
        {Group::SpecialOrthogonalOdd, 5},  {Group::SpecialOrthogonalOdd, 9},
        {Group::UnitarySymplectic, 2},     {Group::UnitarySymplectic, 6},
    };
    for (const auto& cls : classes) {
        for (std::uint64_t i = 0; i < 8; ++i) {
            const UnitarySample s = sample_haar(cls, 42, i);
            CHECK(s.unitarity_residual() < 1e-10);
            if (cls.group == Group::SpecialOrthogonalEven ||
                cls.group == Group::SpecialOrthogonalOdd) {
                CHECK(s.realness_residual() < 1e-12);
                CHECK(s.determinant_error() < 1e-10);
            }
            if (cls.group == Group::UnitarySymplectic) CHECK(s.symplectic_residual() < 1e-10);
            const EigenAngles ea = eigen_angles(s);
            CHECK(static_cast<int>(ea.angles.size()) == cls.matrix_dim);
            CHECK(ea.pairing_residual() < 1e-9);
            if (cls.group == Group::SpecialOrthogonalOdd)
                CHECK(ea.angles.front() == doctest::Approx(0.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("eigen_angles reproduces the eigenvalue multiset") {
    const SymmetryClass cls(Group::Unitary, 12);
    const UnitarySample s = sample_haar(cls, 7, 3);
    const EigenAngles ea = eigen_angles(s);
    // compare det(A - z I) ~ prod (e(theta_j) - z) at a test point
    const std::complex<double> z(0.3, 0.4);
    std::complex<double> from_angles(1.0, 0.0);
    for (double a : ea.angles) from_angles *= (unit_circle(a) - z);
    const Eigen::MatrixXcd m =
        s.entries - z * Eigen::MatrixXcd::Identity(cls.matrix_dim, cls.matrix_dim);
    CHECK(std::abs(from_angles - m.determinant()) < 1e-9 * std::abs(from_angles));
}

TEST_CASE("U(1) Haar angle is uniform (chi-square at p > 0.001)") {
    const SymmetryClass cls(Group::Unitary, 1);
    const int draws = 10000, bins = 20;
    std::vector<int> hist(bins, 0);
    for (int i = 0; i < draws; ++i) {
        const EigenAngles ea = eigen_angles(sample_haar(cls, 5, i));
        ++hist[std::min(bins - 1, static_cast<int>(ea.angles[0] * bins))];
    }
    const double expect = static_cast<double>(draws) / bins;
    double chi2 = 0.0;
    for (int c : hist) chi2 += (c - expect) * (c - expect) / expect;
    // chi-square 0.999 quantile at 19 dof
    CHECK(chi2 < 43.82);
}

TEST_CASE("determinism: identical batches bit for bit, any thread count") {
    const SymmetryClass cls(Group::UnitarySymplectic, 6);
    const auto a = sample_angle_batch(cls, 11, 100, 1);
    const auto b = sample_angle_batch(cls, 11, 100, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].angles.size() == b[i].angles.size());
        for (std::size_t j = 0; j < a[i].angles.size(); ++j)
            CHECK(a[i].angles[j] == b[i].angles[j]);  // exact equality
    }
    // element i equals the two-step pipeline
    const EigenAngles direct = eigen_angles(sample_haar(cls, 11, 57));
    for (std::size_t j = 0; j < direct.angles.size(); ++j)
        CHECK(a[57].angles[j] == direct.angles[j]);
}

TEST_CASE("Haar first moment: mean trace of U(20) is 0 within 3 stderr") {
    const SymmetryClass cls(Group::Unitary, 20);
    std::vector<double> re, im;
    for (int i = 0; i < 10000; ++i) {
        const UnitarySample s = sample_haar(cls, 99, i);
        const std::complex<double> tr = s.entries.trace();
        re.push_back(tr.real());
        im.push_back(tr.imag());
    }
    CHECK(std::abs(mean(re)) < 3.0 * stderr_of(re));
    CHECK(std::abs(mean(im)) < 3.0 * stderr_of(im));
}

TEST_CASE("weyl_average: normalization and closed values") {
    // constant function integrates to 1 for every admissible class
    for (const auto& cls : {SymmetryClass(Group::Unitary, 1), SymmetryClass(Group::Unitary, 2),
                            SymmetryClass(Group::Unitary, 3),
                            SymmetryClass(Group::UnitarySymplectic, 2),
                            SymmetryClass(Group::UnitarySymplectic, 4),
                            SymmetryClass(Group::SpecialOrthogonalEven, 2),
                            SymmetryClass(Group::SpecialOrthogonalEven, 4)}) {
        const double one = weyl_average(cls, [](std::span<const double>) { return 1.0; });
        CHECK(one == doctest::Approx(1.0).epsilon(1e-12));
    }
    auto det_sq = [](std::span<const double> angles) {
        double p = 1.0;
        for (double a : angles) p *= 2.0 - 2.0 * std::cos(kTwoPi * a);
        return p;
    };
    auto det_abs = [](std::span<const double> angles) {
        double p = 1.0;
        for (double a : angles) p *= 2.0 * std::abs(std::sin(kPi * a));
        return p;
    };
    // U(1): mean |e(t)-1|^2 = 2
    CHECK(weyl_average(SymmetryClass(Group::Unitary, 1), det_sq) ==
          doctest::Approx(2.0).epsilon(1e-12));
    // U(2): mean |det(A-I)|^2 = 3 (telescoping closed form)
    CHECK(weyl_average(SymmetryClass(Group::Unitary, 2), det_sq) ==
          doctest::Approx(3.0).epsilon(1e-10));
    // SO(2): mean |det(A-I)| = 2
    CHECK(weyl_average(SymmetryClass(Group::SpecialOrthogonalEven, 2), det_abs) ==
          doctest::Approx(2.0).epsilon(1e-10));
    // USp(2) = SU(2): mean |det(A-I)| = 2
    CHECK(weyl_average(SymmetryClass(Group::UnitarySymplectic, 2), det_abs) ==
          doctest::Approx(2.0).epsilon(1e-10));
    // guards
    CHECK_THROWS(weyl_average(SymmetryClass(Group::Unitary, 4),
                              [](std::span<const double>) { return 1.0; }));
    CHECK_THROWS(weyl_average(SymmetryClass(Group::Unitary, 1),
                              [](std::span<const double>) { return 1.0; }, 8));
}

TEST_CASE("Monte Carlo means agree with weyl_average at N <= 3") {
    auto det_sq_from_angles = [](const EigenAngles& ea) {
        double p = 1.0;
        for (double a : ea.angles) p *= 2.0 - 2.0 * std::cos(kTwoPi * a);
        return p;
    };
    auto det_sq = [](std::span<const double> angles) {
        double p = 1.0;
        for (double a : angles) p *= 2.0 - 2.0 * std::cos(kTwoPi * a);
        return p;
    };
    for (const auto& cls :
         {SymmetryClass(Group::Unitary, 2), SymmetryClass(Group::SpecialOrthogonalEven, 2),
          SymmetryClass(Group::UnitarySymplectic, 2)}) {
        const double oracle = weyl_average(cls, det_sq);
        std::vector<double> vals;
        for (int i = 0; i < 4000; ++i)
            vals.push_back(det_sq_from_angles(eigen_angles(sample_haar(cls, 123, i))));
        CHECK(std::abs(mean(vals) - oracle) < 3.0 * stderr_of(vals));
    }
}

TEST_CASE("char_poly_modulus: fixed points and rotation invariance") {
    // identity at x = 0 -> 0
    EigenAngles ident{{0.0, 0.0, 0.0}, SymmetryClass(Group::Unitary, 3)};
    CHECK(char_poly_modulus(ident, 0.0) == 0.0);
    // diag(e(1/2)) = -1: |det(-1 - 1)| = 2
    EigenAngles minus_one{{0.5}, SymmetryClass(Group::Unitary, 1)};
    CHECK(char_poly_modulus(minus_one, 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    // diag(e(1/4), e(3/4)): |det(A - I)| = |i-1| |(-i)-1| = 2
    EigenAngles quarter{{0.25, 0.75}, SymmetryClass(Group::Unitary, 2)};
    CHECK(char_poly_modulus(quarter, 0.0) == doctest::Approx(2.0).epsilon(1e-14));

    // Haar rotation invariance: |det(A - I e(-x))|^2 moment is x-independent
    const SymmetryClass cls(Group::Unitary, 20);
    std::vector<double> at0, at1;
    for (int i = 0; i < 3000; ++i) {
        const EigenAngles ea = eigen_angles(sample_haar(cls, 31, i));
        const double m0 = char_poly_modulus(ea, 0.0);
        const double m1 = char_poly_modulus(ea, 0.37);
        at0.push_back(m0 * m0);
        at1.push_back(m1 * m1);
    }
    const double se = std::hypot(stderr_of(at0), stderr_of(at1));
    CHECK(std::abs(mean(at0) - mean(at1)) < 3.0 * se);
}

TEST_CASE("O mixture batch carries both parities") {
    const auto batch = sample_angle_batch_o_mixture(6, 3, 200);
    int even = 0, odd = 0;
    for (const auto& ea : batch) {
        if (ea.cls.group == Group::SpecialOrthogonalOdd) {
            ++odd;
            CHECK(ea.angles.front() == doctest::Approx(0.0).epsilon(1e-9));
        } else {
            ++even;
        }
    }
    CHECK(even > 50);
    CHECK(odd > 50);
}

TEST_CASE("angle CSV round trip") {
    const SymmetryClass cls(Group::SpecialOrthogonalOdd, 5);
    const auto batch = sample_angle_batch(cls, 9, 3);
    std::stringstream ss;
    write_angle_csv(ss, batch, 9);
    std::stringstream ss2(ss.str());
    const auto loaded = read_angle_csv(ss2);
    REQUIRE(loaded.size() == batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        CHECK(loaded[i].cls.group == batch[i].cls.group);
        for (std::size_t j = 0; j < batch[i].angles.size(); ++j)
            CHECK(loaded[i].angles[j] == batch[i].angles[j]);  // %.17g round trip
    }
    // rewriting the loaded batch is byte-identical
    std::stringstream ss3;
    write_angle_csv(ss3, loaded, 9);
    CHECK(ss3.str() == ss.str());
}
