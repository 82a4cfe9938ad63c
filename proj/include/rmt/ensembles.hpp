// ensembles.hpp
//
// Haar-distributed sampling from the classical compact groups U(N), SO(2N),
// SO(2N+1), USp(2N), eigenvalue-angle extraction, and a direct
// Weyl-integration quadrature oracle at small dimension.
//
// Angle convention: everywhere in this library an eigenvalue e^{2 pi i a} is
// represented by its angle a as a fraction of a full turn, a in [0, 1).

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmt {

enum class Group { Unitary, SpecialOrthogonalEven, SpecialOrthogonalOdd, UnitarySymplectic };

std::string group_name(Group g);

// Which compact group and at what matrix dimension.  For USp and SO-even the
// dimension is 2N, for SO-odd it is 2N+1, for U it is N.
struct SymmetryClass {
    Group group;
    int matrix_dim;

    SymmetryClass(Group g, int dim);  // validates parity and size

    // number of free angle variables in the Weyl parametrization
    int free_angles() const;
    std::string name() const;
    bool has_symmetry_point() const { return group != Group::Unitary; }
};

struct UnitarySample {
    Eigen::MatrixXcd entries;
    SymmetryClass cls;
    std::uint64_t seed;
    std::uint64_t sample_index;

    // residual diagnostics, directly assertable against the 1e-10 contracts
    double unitarity_residual() const;   // max |A A* - I|
    double symplectic_residual() const;  // max |A Z A^t - Z| (USp only)
    double realness_residual() const;    // max |Im A| (SO only)
    double determinant_error() const;    // |det A - 1| (SO only)
};

struct EigenAngles {
    std::vector<double> angles;  // sorted ascending, in [0, 1)
    SymmetryClass cls;

    // largest deviation of the multiset from invariance under a -> 1 - a
    // (0 for Unitary, which has no forced pairing)
    double pairing_residual() const;
};

// the 2N x 2N symplectic form Z = [[0, I], [-I, 0]]
Eigen::MatrixXd symplectic_form(int two_n);

// Haar-distributed sample, a pure function of (cls, seed, index).
UnitarySample sample_haar(const SymmetryClass& cls, std::uint64_t seed, std::uint64_t index);

// Sorted eigenvalue angles.  Throws NumericalError if the eigensolver fails.
EigenAngles eigen_angles(const UnitarySample& sample);

// element i equals eigen_angles(sample_haar(cls, seed, i)); `threads` affects
// wall time only, never the result
std::vector<EigenAngles> sample_angle_batch(const SymmetryClass& cls, std::uint64_t seed,
                                            std::uint64_t count, int threads = 1);

// 50/50 mixture of SO(two_n) and SO(two_n+1), the "O" symmetry exposure; the
// even/odd choice for index i is drawn from the (seed, i) stream
std::vector<EigenAngles> sample_angle_batch_o_mixture(int two_n, std::uint64_t seed,
                                                      std::uint64_t count, int threads = 1);

// Haar average of a symmetric function of the full angle list by direct
// tensor-product quadrature against the Weyl density (U(N), USp(2N), SO(2N);
// at most 3 free angle variables).  The integrand receives matrix_dim angles.
double weyl_average(const SymmetryClass& cls,
                    const std::function<double(std::span<const double>)>& integrand,
                    int quad_points_per_dim = 64);

// |det(A - I e(-x))| from the eigenvalue angles (stable product form)
double char_poly_modulus(const EigenAngles& angles, double x);
double char_poly_modulus(const UnitarySample& sample, double x);

// CSV export: one row per sample, columns = sorted angles; leading comment
// line names the class and seed.  `label` overrides the class name in the
// header (used for the O mixture, written as class=O).
void write_angle_csv(std::ostream& os, const std::vector<EigenAngles>& batch,
                     std::uint64_t seed, const std::string& label = "");
std::vector<EigenAngles> read_angle_csv(std::istream& is);

// thrown when an eigensolver or a controlled numerical procedure fails
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rmt
