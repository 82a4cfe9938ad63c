// kernels.hpp
//
// Analytic density engine: sine-kernel determinant densities for the five
// symmetry labels, finite-N kernels, Fredholm eigenvalues of the sine kernel
// on an interval, and the spacing / lowest-zero densities built from them.
//
// Dirac-delta contributions are never smeared onto grids; they live in
// explicit atom ledgers and are applied analytically.

#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace rmt {

// U, Sp, O+, O- with their epsilon in the kernel
// K_eps(x,y) = sinc_pi(x-y) + eps * sinc_pi(x+y).
// O- shares eps = -1 with Sp but carries delta-atom bookkeeping.
enum class SymmetryLabel { U, Sp, OPlus, OMinus, O };

struct KernelChoice {
    int epsilon;  // in {-1, 0, +1}
    SymmetryLabel label;

    static KernelChoice from_label(SymmetryLabel l);
};

std::string symmetry_label_name(SymmetryLabel l);
SymmetryLabel parse_symmetry_label(const std::string& s);

struct DensityCurve {
    std::vector<double> grid;    // strictly increasing
    std::vector<double> values;  // smooth part
    std::vector<std::pair<double, double>> atoms;  // (location, coefficient)

    void validate() const;  // throws on malformed curves
};

struct FredholmSpectrum {
    double interval_length;           // x
    std::vector<double> eigenvalues;  // descending, in [0, 1]
    int quad_order;
};

// K_eps entry with the sinc singularities evaluated by their limits
double sine_kernel_entry(const KernelChoice& choice, double xi, double xj);

// n-level density: smooth part is det of the n x n K_eps matrix; for O- the
// atoms list holds, for each m, the coefficient det of the minor with row and
// column m deleted (the 0 x 0 minor has det 1).
struct NLevelDensity {
    double smooth;
    std::vector<std::pair<int, double>> atoms;  // (variable index m, coefficient)
};
NLevelDensity n_level_density(SymmetryLabel label, const std::vector<double>& x);

// one-level densities; atom_coeff is the delta_0 coefficient (1/2 for O,
// 1 for O-, 0 otherwise)
struct OneLevelDensity {
    double smooth;
    double atom_coeff;
};
OneLevelDensity one_level_density(SymmetryLabel symmetry, double x);

// 1 - (sin pi x / pi x)^2
double pair_correlation_density(double x);

// J_N(theta) = sum_{m=0}^{N-1} e(m theta) = e((N-1) theta / 2) sin(pi N theta) / sin(pi theta)
std::complex<double> jn_kernel(int n, double theta);

// det_{n x n} (1/N) J_N((x_i - x_j)/N): the exact N-point scaled density
double finite_n_level_density(int big_n, const std::vector<double>& x);

// eigenvalues of the sine-kernel integral operator on [-x/2, x/2] by
// symmetrized Gauss-Legendre Nystrom; largest `count` eigenvalues returned
FredholmSpectrum fredholm_spectrum(double x, int count = 24, int quad_order = 48);

// E(x) = prod_j (1 - lambda_j(x)): probability of no point in an interval of
// length x
double gap_probability(double x, int quad_order = 48);

// consecutive spacing density mu(x) = E''(x) (second derivative recovered
// numerically with step-halving control)
double spacing_density(double x);

// CDF of the spacing law, F(s) = 1 + E'(s)
double spacing_cdf(double s);

// lowest-zero densities: U uses all eigenvalues at argument x; Sp the odd
// indices at 2x; O the even indices at 2x
double lowest_zero_density(SymmetryLabel symmetry, double x);

// P(first point <= x) under the matching lowest-zero law
double lowest_zero_cdf(SymmetryLabel symmetry, double x);

// CSV (x, value) plus sidecar JSON-ready atom list
void write_density_csv(std::ostream& os, const DensityCurve& curve);

}  // namespace rmt
