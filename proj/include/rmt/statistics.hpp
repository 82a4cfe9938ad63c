// statistics.hpp
//
// Empirical statistics over unfolded point sets (matrix eigenangles or zero
// ordinates): pair correlation, n-level, n-correlation, spacings, j-th lowest
// point, Montgomery's F, and weighted pair sums.
//
// Unfolding convention: eigenangles live on a circle.  Points are mapped to
// the signed window (-dim/2, dim/2] (angle 0 is the symmetry point for
// SO/USp and the fixed reference point for U).  Spacing statistics cut the
// circle at angle 0 and discard the wrap-around gap.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmt/ensembles.hpp"
#include "rmt/zeta_types.hpp"

namespace rmt {

struct UnfoldedPoints {
    std::vector<double> points;  // sorted ascending, asymptotic mean spacing 1
    double period;               // circumference for circular sources, 0 for the line
    std::string source;

    // consecutive gaps under the cut-at-0 convention (circular sources) or
    // plain consecutive differences (line sources)
    std::vector<double> gaps() const;
    double mean_gap() const;
};

enum class ZeroUnfoldMode { Paper, Density };

UnfoldedPoints unfold_angles(const EigenAngles& angles);
UnfoldedPoints unfold_zeros(const ZeroList& zeros, ZeroUnfoldMode mode);

// Test-function catalog.  Every entry carries its arity, a translation
// invariance flag, and (when known in closed form) its Fourier data, so that
// support hypotheses are checkable rather than assumed.
struct TestFunction {
    int arity;
    bool translation_invariant;  // along (1, ..., 1)
    // L^1 Fourier support radius in the paper's alpha units, or infinity
    double fourier_support;
    std::function<double(std::span<const double>)> eval;
    std::function<double(double)> fourier;  // 1-d catalog entries only

    double operator()(std::span<const double> x) const { return eval(x); }

    // isotropic Gaussian e^{-pi |x|^2}
    static TestFunction gaussian(int arity);
    // g(x_1 - x_2) with g(u) = e^{-pi u^2} (translation invariant, arity 2)
    static TestFunction gaussian_difference();
    // arity-1 Fejer kernel whose transform in Montgomery alpha units is the
    // unit triangle on (-support, support): r(u) = support * sinc^2(...)
    static TestFunction fejer_montgomery(double support, double log_t);
    // arity-1 Fejer kernel with standard-Fourier triangle on (-a, a)
    static TestFunction fejer_unfolded(double a);
    // C^1 smoothed indicator of [lo, hi] with cosine roll-off of width w
    static TestFunction smoothed_box(double lo, double hi, double w);
};

struct Histogram {
    std::vector<double> edges;   // size bins + 1
    std::vector<double> counts;  // raw counts
    double total_weight;         // normalizing denominator for the density
    double bin_width() const { return edges.size() > 1 ? edges[1] - edges[0] : 0.0; }
    double density(std::size_t bin) const;
    static Histogram with_bins(double lo, double hi, double width);
    void add(double x);
};

// (1 / total point count) * #{ordered pairs with difference in [alpha, beta]},
// pooled over samples; circular sources use differences mod period
double empirical_pair_correlation(const std::vector<UnfoldedPoints>& samples, double alpha,
                                  double beta);

// average over samples of the sum of f over ordered tuples of distinct points
double empirical_n_level(const std::vector<UnfoldedPoints>& samples, const TestFunction& f);

// (1 / total point count) * sum of f over ordered tuples of distinct points;
// f must be translation invariant
double empirical_n_correlation(const std::vector<UnfoldedPoints>& samples,
                               const TestFunction& f);

// pooled consecutive spacings, density-normalized
Histogram empirical_spacings(const std::vector<UnfoldedPoints>& samples, double lo = 0.0,
                             double hi = 5.0, double width = 0.1);

// j-th smallest nonnegative point per sample (j >= 1)
Histogram jth_lowest(const std::vector<UnfoldedPoints>& samples, int j, double lo = 0.0,
                     double hi = 5.0, double width = 0.1);
std::vector<double> jth_lowest_values(const std::vector<UnfoldedPoints>& samples, int j);

// Montgomery's form factor with weight w(u) = 4/(4+u^2); returns the real
// part after checking the imaginary residual is below 1e-10
double montgomery_f(const ZeroList& zeros, double t_max, double alpha);

// (1/N(T)) sum_{pairs} r(gamma - gamma') w(gamma - gamma') for an arity-1 r
double weighted_pair_sum(const ZeroList& zeros, double t_max, const TestFunction& r);

// the dual side: integral of r.fourier(alpha) * F(alpha, T) over
// [-alpha_max, alpha_max] by composite quadrature
double montgomery_dual_integral(const ZeroList& zeros, double t_max, const TestFunction& r,
                                double alpha_max, int panels = 512, int nodes = 4);

// Kolmogorov-Smirnov distance between sorted samples and a reference CDF
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);
// two-sample KS distance
double ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace rmt
