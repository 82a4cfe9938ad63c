#include "rmt/kernels.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "rmt/ensembles.hpp"  // NumericalError
#include "rmt/quadrature.hpp"
#include "rmt/special.hpp"

namespace rmt {

KernelChoice KernelChoice::from_label(SymmetryLabel l) {
    switch (l) {
        case SymmetryLabel::U: return {0, l};
        case SymmetryLabel::Sp: return {-1, l};
        case SymmetryLabel::OPlus: return {+1, l};
        case SymmetryLabel::OMinus: return {-1, l};
        case SymmetryLabel::O:
            throw std::invalid_argument("KernelChoice: O is an average, not a kernel");
    }
    throw std::invalid_argument("KernelChoice: bad label");
}

std::string symmetry_label_name(SymmetryLabel l) {
    switch (l) {
        case SymmetryLabel::U: return "U";
        case SymmetryLabel::Sp: return "Sp";
        case SymmetryLabel::OPlus: return "O+";
        case SymmetryLabel::OMinus: return "O-";
        case SymmetryLabel::O: return "O";
    }
    return "?";
}

SymmetryLabel parse_symmetry_label(const std::string& s) {
    if (s == "U") return SymmetryLabel::U;
    if (s == "Sp") return SymmetryLabel::Sp;
    if (s == "O+") return SymmetryLabel::OPlus;
    if (s == "O-") return SymmetryLabel::OMinus;
    if (s == "O") return SymmetryLabel::O;
    throw std::invalid_argument("unknown symmetry label: " + s);
}

void DensityCurve::validate() const {
    if (grid.size() != values.size())
        throw std::invalid_argument("DensityCurve: grid/values length mismatch");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("DensityCurve: grid not strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("DensityCurve: non-finite value");
    for (const auto& [loc, coeff] : atoms) {
        (void)loc;
        if (coeff < 0.0) throw std::invalid_argument("DensityCurve: negative atom");
    }
}

double sine_kernel_entry(const KernelChoice& choice, double xi, double xj) {
    return sinc_pi(xi - xj) + choice.epsilon * sinc_pi(xi + xj);
}

namespace {

double kernel_det(int eps, const std::vector<double>& x, int skip = -1) {
    const int n = static_cast<int>(x.size()) - (skip >= 0 ? 1 : 0);
    if (n == 0) return 1.0;  // empty minor
    Eigen::MatrixXd m(n, n);
    const KernelChoice kc{eps, eps == 0 ? SymmetryLabel::U : SymmetryLabel::Sp};
    int r = 0;
    for (int i = 0; i < static_cast<int>(x.size()); ++i) {
        if (i == skip) continue;
        int c = 0;
        for (int j = 0; j < static_cast<int>(x.size()); ++j) {
            if (j == skip) continue;
            m(r, c) = sine_kernel_entry(kc, x[i], x[j]);
            ++c;
        }
        ++r;
    }
    return m.determinant();
}

}  // namespace

NLevelDensity n_level_density(SymmetryLabel label, const std::vector<double>& x) {
    if (x.empty()) throw std::invalid_argument("n_level_density: need n >= 1");
    NLevelDensity out;
    switch (label) {
        case SymmetryLabel::U:
            out.smooth = kernel_det(0, x);
            return out;
        case SymmetryLabel::Sp:
            out.smooth = kernel_det(-1, x);
            return out;
        case SymmetryLabel::OPlus:
            out.smooth = kernel_det(+1, x);
            return out;
        case SymmetryLabel::OMinus: {
            out.smooth = kernel_det(-1, x);
            for (int m = 0; m < static_cast<int>(x.size()); ++m)
                out.atoms.emplace_back(m, kernel_det(-1, x, m));
            return out;
        }
        case SymmetryLabel::O:
            throw std::invalid_argument("n_level_density: O handled at n = 1 only");
    }
    throw std::invalid_argument("n_level_density: bad label");
}

OneLevelDensity one_level_density(SymmetryLabel symmetry, double x) {
    const double s = sinc_pi(2.0 * x);  // sin(2 pi x) / (2 pi x)
    switch (symmetry) {
        case SymmetryLabel::O: return {1.0, 0.5};
        case SymmetryLabel::OPlus: return {1.0 + s, 0.0};
        case SymmetryLabel::OMinus: return {1.0 - s, 1.0};
        case SymmetryLabel::Sp: return {1.0 - s, 0.0};
        case SymmetryLabel::U: return {1.0, 0.0};
    }
    throw std::invalid_argument("one_level_density: bad label");
}

double pair_correlation_density(double x) {
    const double s = sinc_pi(x);
    return 1.0 - s * s;
}

std::complex<double> jn_kernel(int n, double theta) {
    if (n < 1) throw std::invalid_argument("jn_kernel: N >= 1");
    const double nearest = std::round(theta);
    if (std::abs(theta - nearest) < 1e-12) {
        // J_N(integer) = sum of N ones
        return {static_cast<double>(n), 0.0};
    }
    const double ratio = std::sin(kPi * n * theta) / std::sin(kPi * theta);
    return unit_circle(0.5 * (n - 1) * theta) * ratio;
}

double finite_n_level_density(int big_n, const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    if (n < 1) throw std::invalid_argument("finite_n_level_density: need n >= 1");
    if (n > big_n) throw std::invalid_argument("finite_n_level_density: n must be <= N");
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = jn_kernel(big_n, (x[i] - x[j]) / big_n) / static_cast<double>(big_n);
    const std::complex<double> det = m.determinant();
    return det.real();  // matrix is Hermitian, det is real up to roundoff
}

FredholmSpectrum fredholm_spectrum(double x, int count, int quad_order) {
    if (!(x > 0.0)) throw std::invalid_argument("fredholm_spectrum: x > 0 required");
    if (quad_order < 2 * count)
        throw std::invalid_argument("fredholm_spectrum: quad_order must be >= 2*count");
    const QuadRule& rule = gauss_legendre(quad_order);
    // nodes on [-x/2, x/2]; symmetrized kernel D^{1/2} K D^{1/2}
    std::vector<double> t(quad_order), sw(quad_order);
    for (int i = 0; i < quad_order; ++i) {
        t[i] = 0.5 * x * rule.nodes[i];
        sw[i] = std::sqrt(0.5 * x * rule.weights[i]);
    }
    Eigen::MatrixXd a(quad_order, quad_order);
    for (int i = 0; i < quad_order; ++i)
        for (int j = 0; j < quad_order; ++j) a(i, j) = sw[i] * sinc_pi(t[i] - t[j]) * sw[j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("fredholm_spectrum: eigensolver failed");
    std::vector<double> ev(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + quad_order);
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    for (double v : ev)
        if (v < -1e-12 || v > 1.0 + 1e-12)
            throw NumericalError("fredholm_spectrum: eigenvalue outside [0,1]; "
                                 "quadrature order too small for this x");
    FredholmSpectrum out{x, {}, quad_order};
    out.eigenvalues.assign(ev.begin(), ev.begin() + std::min<std::size_t>(count, ev.size()));
    return out;
}

namespace {

// product over the selected (1 - lambda_j); selector takes the descending index
double eigen_product(double x, const std::function<bool(int)>& keep, int quad_order) {
    if (x <= 0.0) return 1.0;
    const FredholmSpectrum fs = fredholm_spectrum(x, quad_order / 2, quad_order);
    double prod = 1.0;
    for (std::size_t j = 0; j < fs.eigenvalues.size(); ++j) {
        if (!keep(static_cast<int>(j))) continue;
        const double lam = std::min(1.0, std::max(0.0, fs.eigenvalues[j]));
        prod *= (1.0 - lam);
    }
    return prod;
}

int order_for(double x) {
    // spectral accuracy needs a few nodes per unit length plus margin
    return std::max(48, 16 + 8 * static_cast<int>(std::ceil(x)));
}

// first derivative with central differences and one step-halving check
double derivative_checked(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2.0 * hh); };
    const double d1 = d(h), d2 = d(0.5 * h);
    const double richardson = (4.0 * d2 - d1) / 3.0;
    if (std::abs(d2 - d1) > 1e-5 * std::max(1.0, std::abs(richardson)))
        throw NumericalError("derivative step control failed");
    return richardson;
}

double second_derivative_checked(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double hh) { return (f(x + hh) - 2.0 * f(x) + f(x - hh)) / (hh * hh); };
    const double d1 = d(h), d2 = d(0.5 * h);
    const double richardson = (4.0 * d2 - d1) / 3.0;
    if (std::abs(d2 - d1) > 1e-5 * std::max(1.0, std::abs(richardson)))
        throw NumericalError("second-derivative step control failed");
    return richardson;
}

}  // namespace

double gap_probability(double x, int quad_order) {
    return eigen_product(x, [](int) { return true; }, quad_order);
}

double spacing_density(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("spacing_density: x > 0 required");
    const int q = order_for(x + 0.01);
    return second_derivative_checked([q](double s) { return gap_probability(s, q); }, x, 1e-3);
}

double spacing_cdf(double s) {
    if (s <= 1e-3) return 0.0;
    const int q = order_for(s + 0.01);
    const double eprime =
        derivative_checked([q](double u) { return gap_probability(u, q); }, s, 1e-3);
    return 1.0 + eprime;
}

namespace {

double survival(SymmetryLabel symmetry, double x) {
    // probability that the first point lies beyond x
    switch (symmetry) {
        case SymmetryLabel::U:
            return eigen_product(x, [](int) { return true; }, order_for(x));
        case SymmetryLabel::Sp:
            return eigen_product(2.0 * x, [](int j) { return j % 2 == 1; },
                                 order_for(2.0 * x));
        case SymmetryLabel::O:
        case SymmetryLabel::OPlus:
            return eigen_product(2.0 * x, [](int j) { return j % 2 == 0; },
                                 order_for(2.0 * x));
        default:
            throw std::invalid_argument("lowest_zero: symmetry must be U, Sp or O");
    }
}

}  // namespace

double lowest_zero_density(SymmetryLabel symmetry, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("lowest_zero_density: x > 0 required");
    return -derivative_checked([&](double u) { return survival(symmetry, u); }, x, 1e-3);
}

double lowest_zero_cdf(SymmetryLabel symmetry, double x) {
    if (x <= 0.0) return 0.0;
    return 1.0 - survival(symmetry, x);
}

void write_density_csv(std::ostream& os, const DensityCurve& curve) {
    curve.validate();
    os << "x,value\n";
    char buf[64];
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        int len = std::snprintf(buf, sizeof buf, "%.17g", curve.grid[i]);
        os.write(buf, len);
        os << ',';
        len = std::snprintf(buf, sizeof buf, "%.17g", curve.values[i]);
        os.write(buf, len);
        os << '\n';
    }
}

}  // namespace rmt
