#include "rmt/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rmt/quadrature.hpp"
#include "rmt/rng.hpp"
#include "rmt/special.hpp"

namespace rmt {

namespace {

constexpr int kMaxDim = 200;  // desk-scale guard for dense eigensolvers

Eigen::MatrixXcd complex_ginibre(RandomStream& rng, int n) {
    Eigen::MatrixXcd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            m(i, j) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
    return m;
}

Eigen::MatrixXd real_ginibre(RandomStream& rng, int n) {
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = rng.next_gaussian();
    return m;
}

// QR with the R-diagonal phase normalization: the unique Q with R_jj > 0,
// which maps the Ginibre ensemble to Haar measure.
Eigen::MatrixXcd haar_unitary(RandomStream& rng, int n) {
    const Eigen::MatrixXcd g = complex_ginibre(rng, n);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        const std::complex<double> d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : std::complex<double>(1.0, 0.0);
    }
    return q;
}

Eigen::MatrixXd haar_orthogonal(RandomStream& rng, int n) {
    const Eigen::MatrixXd g = real_ginibre(rng, n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd& r = qr.matrixQR();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

// Haar on SO(n): Haar on O(n), rejecting the det = -1 coset (acceptance 1/2;
// conditioning Haar to a coset is exact, so this is unbiased).
Eigen::MatrixXd haar_special_orthogonal(RandomStream& rng, int n) {
    for (;;) {
        Eigen::MatrixXd q = haar_orthogonal(rng, n);
        if (q.determinant() > 0.0) return q;
    }
}

// Haar on USp(2N) by structure-preserving Gram-Schmidt: build N orthonormal
// columns v_i (orthogonalized against previous columns and their partners),
// with partner(v) = -Z conj(v).  The partner map commutes with left
// multiplication by any S in USp(2N) (S Z = Z conj(S)), so the output law is
// left-invariant, i.e. Haar.  This is quaternionic QR in the complex picture.
Eigen::MatrixXcd haar_symplectic(RandomStream& rng, int two_n) {
    const int n = two_n / 2;
    Eigen::MatrixXcd u(two_n, two_n);
    auto partner = [&](const Eigen::VectorXcd& v) {
        Eigen::VectorXcd w(two_n);
        for (int k = 0; k < n; ++k) {
            w(k) = -std::conj(v(k + n));
            w(k + n) = std::conj(v(k));
        }
        return w;
    };
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXcd v(two_n);
        for (int k = 0; k < two_n; ++k)
            v(k) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
        // two modified Gram-Schmidt passes keep residuals near machine epsilon
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < 2 * i; ++j) v -= u.col(j).dot(v) * u.col(j);
        }
        v.normalize();
        u.col(2 * i) = v;
        u.col(2 * i + 1) = partner(v);
    }
    // reorder columns to [v_0..v_{N-1} | partner_0..partner_{N-1}] so that the
    // block structure matches Z = [[0, I], [-I, 0]]
    Eigen::MatrixXcd arranged(two_n, two_n);
    for (int i = 0; i < n; ++i) {
        arranged.col(i) = u.col(2 * i);
        arranged.col(i + n) = u.col(2 * i + 1);
    }
    return arranged;
}

double wrap_angle(double arg_over_turn) {
    double a = arg_over_turn - std::floor(arg_over_turn);
    if (a >= 1.0) a -= 1.0;
    // snap eigenvalues numerically just below the positive real axis onto 0
    if (a > 1.0 - 1e-12) a = 0.0;
    return a;
}

}  // namespace

std::string group_name(Group g) {
    switch (g) {
        case Group::Unitary: return "U";
        case Group::SpecialOrthogonalEven: return "SO+";
        case Group::SpecialOrthogonalOdd: return "SO-";
        case Group::UnitarySymplectic: return "USp";
    }
    return "?";
}

SymmetryClass::SymmetryClass(Group g, int dim) : group(g), matrix_dim(dim) {
    if (dim < 1) throw std::invalid_argument("SymmetryClass: dimension must be >= 1");
    switch (g) {
        case Group::Unitary: break;
        case Group::SpecialOrthogonalEven:
            if (dim % 2 != 0) throw std::invalid_argument("SO-even needs even dimension");
            break;
        case Group::SpecialOrthogonalOdd:
            if (dim % 2 != 1) throw std::invalid_argument("SO-odd needs odd dimension");
            break;
        case Group::UnitarySymplectic:
            if (dim % 2 != 0 || dim < 2)
                throw std::invalid_argument("USp needs even dimension >= 2");
            break;
    }
}

int SymmetryClass::free_angles() const {
    switch (group) {
        case Group::Unitary: return matrix_dim;
        case Group::SpecialOrthogonalEven:
        case Group::UnitarySymplectic: return matrix_dim / 2;
        case Group::SpecialOrthogonalOdd: return (matrix_dim - 1) / 2;
    }
    return 0;
}

std::string SymmetryClass::name() const {
    return group_name(group) + "(" + std::to_string(matrix_dim) + ")";
}

Eigen::MatrixXd symplectic_form(int two_n) {
    if (two_n % 2 != 0 || two_n < 2)
        throw std::invalid_argument("symplectic_form: dimension must be even and >= 2");
    const int n = two_n / 2;
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(two_n, two_n);
    z.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    z.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return z;
}

double UnitarySample::unitarity_residual() const {
    const int n = entries.rows();
    return (entries * entries.adjoint() - Eigen::MatrixXcd::Identity(n, n))
        .cwiseAbs()
        .maxCoeff();
}

double UnitarySample::symplectic_residual() const {
    const Eigen::MatrixXd z = symplectic_form(entries.rows());
    return (entries * z * entries.transpose() - z).cwiseAbs().maxCoeff();
}

double UnitarySample::realness_residual() const {
    return entries.imag().cwiseAbs().maxCoeff();
}

double UnitarySample::determinant_error() const {
    return std::abs(entries.determinant() - std::complex<double>(1.0, 0.0));
}

double EigenAngles::pairing_residual() const {
    if (cls.group == Group::Unitary) return 0.0;
    // mirror the multiset through a -> 1 - a and match against the sorted
    // original; mirrors landing at the wrap point represent angle 0
    std::vector<double> mirrored;
    mirrored.reserve(angles.size());
    for (double a : angles) {
        double m = 1.0 - a;
        if (m > 1.0 - 1e-9) m = std::max(0.0, 1.0 - m);
        mirrored.push_back(m);
    }
    std::sort(mirrored.begin(), mirrored.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i)
        worst = std::max(worst, std::abs(angles[i] - mirrored[i]));
    return worst;
}

UnitarySample sample_haar(const SymmetryClass& cls, std::uint64_t seed, std::uint64_t index) {
    if (cls.matrix_dim > kMaxDim)
        throw std::invalid_argument("sample_haar: dimension above desk-scale guard (200)");
    RandomStream rng(seed, index, static_cast<std::uint64_t>(cls.group));
    UnitarySample s{Eigen::MatrixXcd(), cls, seed, index};
    switch (cls.group) {
        case Group::Unitary:
            s.entries = haar_unitary(rng, cls.matrix_dim);
            break;
        case Group::SpecialOrthogonalEven:
        case Group::SpecialOrthogonalOdd:
            s.entries = haar_special_orthogonal(rng, cls.matrix_dim).cast<std::complex<double>>();
            break;
        case Group::UnitarySymplectic:
            s.entries = haar_symplectic(rng, cls.matrix_dim);
            break;
    }
    return s;
}

EigenAngles eigen_angles(const UnitarySample& sample) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
    solver.compute(sample.entries, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigen_angles: eigensolver did not converge for " +
                             sample.cls.name() + " sample " +
                             std::to_string(sample.sample_index));
    EigenAngles out{{}, sample.cls};
    out.angles.reserve(sample.cls.matrix_dim);
    for (int i = 0; i < solver.eigenvalues().size(); ++i) {
        const std::complex<double> ev = solver.eigenvalues()(i);
        out.angles.push_back(wrap_angle(std::arg(ev) / kTwoPi));
    }
    std::sort(out.angles.begin(), out.angles.end());
    return out;
}

std::vector<EigenAngles> sample_angle_batch(const SymmetryClass& cls, std::uint64_t seed,
                                            std::uint64_t count, int threads) {
    if (count < 1) throw std::invalid_argument("sample_angle_batch: count must be >= 1");
    std::vector<EigenAngles> out(count, EigenAngles{{}, cls});
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i)
            out[i] = eigen_angles(sample_haar(cls, seed, i));
    };
    if (threads <= 1 || count < 64) {
        work(0, count);
    } else {
        const std::uint64_t chunk = (count + threads - 1) / threads;
        std::vector<std::future<void>> futs;
        for (std::uint64_t b = 0; b < count; b += chunk)
            futs.push_back(std::async(std::launch::async, work, b, std::min(b + chunk, count)));
        for (auto& f : futs) f.get();
    }
    return out;
}

std::vector<EigenAngles> sample_angle_batch_o_mixture(int two_n, std::uint64_t seed,
                                                      std::uint64_t count, int threads) {
    if (count < 1) throw std::invalid_argument("sample_angle_batch_o_mixture: count >= 1");
    const SymmetryClass even(Group::SpecialOrthogonalEven, two_n);
    const SymmetryClass odd(Group::SpecialOrthogonalOdd, two_n + 1);
    std::vector<EigenAngles> out(count, EigenAngles{{}, even});
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            RandomStream coin(seed, i, /*salt=*/0x6F6D6978ULL);
            const SymmetryClass& cls = coin.next_bit() ? odd : even;
            out[i] = eigen_angles(sample_haar(cls, seed, i));
        }
    };
    if (threads <= 1 || count < 64) {
        work(0, count);
    } else {
        const std::uint64_t chunk = (count + threads - 1) / threads;
        std::vector<std::future<void>> futs;
        for (std::uint64_t b = 0; b < count; b += chunk)
            futs.push_back(std::async(std::launch::async, work, b, std::min(b + chunk, count)));
        for (auto& f : futs) f.get();
    }
    return out;
}

namespace {

// Weyl densities, Eqs over the free variables t in [0,1]^N.
// U(N):    (1/N!)  prod_{j<k} |e(t_j) - e(t_k)|^2         angles  = t_j
// USp(2N): (2^{N^2}/N!)   prod_{j<k} (cos pi t_j - cos pi t_k)^2 prod sin^2 pi t_j
// SO(2N):  (2^{(N-1)^2}/N!) prod_{j<k} (cos pi t_j - cos pi t_k)^2
// For USp/SO the eigenvalue pair sits at angles t/2 and 1 - t/2.
double weyl_weight(const SymmetryClass& cls, std::span<const double> t) {
    const int n = cls.free_angles();
    double w = 1.0;
    switch (cls.group) {
        case Group::Unitary: {
            for (int j = 0; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    const double c = 2.0 - 2.0 * std::cos(kTwoPi * (t[j] - t[k]));
                    w *= c;
                }
            for (int j = 2; j <= n; ++j) w /= j;
            return w;
        }
        case Group::UnitarySymplectic: {
            for (int j = 0; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    const double c = std::cos(kPi * t[j]) - std::cos(kPi * t[k]);
                    w *= c * c;
                }
            for (int j = 0; j < n; ++j) {
                const double s = std::sin(kPi * t[j]);
                w *= s * s;
            }
            w *= std::pow(2.0, n * n);
            for (int j = 2; j <= n; ++j) w /= j;
            return w;
        }
        case Group::SpecialOrthogonalEven: {
            for (int j = 0; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    const double c = std::cos(kPi * t[j]) - std::cos(kPi * t[k]);
                    w *= c * c;
                }
            w *= std::pow(2.0, (n - 1) * (n - 1));
            for (int j = 2; j <= n; ++j) w /= j;
            return w;
        }
        case Group::SpecialOrthogonalOdd:
            throw std::invalid_argument("weyl_average: SO-odd has no Eq-style density here");
    }
    return w;
}

void fill_full_angles(const SymmetryClass& cls, std::span<const double> t,
                      std::vector<double>& angles) {
    angles.clear();
    switch (cls.group) {
        case Group::Unitary:
            angles.assign(t.begin(), t.end());
            break;
        case Group::UnitarySymplectic:
        case Group::SpecialOrthogonalEven:
            for (double v : t) {
                const double half = 0.5 * v;
                angles.push_back(half);
                angles.push_back(half == 0.0 ? 0.0 : 1.0 - half);
            }
            break;
        case Group::SpecialOrthogonalOdd:
            break;
    }
    std::sort(angles.begin(), angles.end());
}

}  // namespace

double weyl_average(const SymmetryClass& cls,
                    const std::function<double(std::span<const double>)>& integrand,
                    int quad_points_per_dim) {
    const int n = cls.free_angles();
    if (n > 3) throw std::invalid_argument("weyl_average: more than 3 free angle variables");
    if (quad_points_per_dim < 16)
        throw std::invalid_argument("weyl_average: need at least 16 points per dimension");
    if (cls.group == Group::SpecialOrthogonalOdd)
        throw std::invalid_argument("weyl_average: SO-odd not covered by the Weyl densities");
    double cost = 1.0;
    for (int d = 0; d < n; ++d) cost *= quad_points_per_dim;
    if (cost > 2e7) throw std::invalid_argument("weyl_average: quadrature cost guard tripped");

    const QuadRule& rule = gauss_legendre(quad_points_per_dim);
    std::vector<double> node(quad_points_per_dim), wt(quad_points_per_dim);
    for (int i = 0; i < quad_points_per_dim; ++i) {
        node[i] = 0.5 + 0.5 * rule.nodes[i];  // map (-1,1) -> (0,1)
        wt[i] = 0.5 * rule.weights[i];
    }

    std::vector<double> t(n), angles;
    double integral_fw = 0.0, integral_w = 0.0;
    std::vector<int> idx(n, 0);
    const long long total = static_cast<long long>(cost);
    for (long long flat = 0; flat < total; ++flat) {
        long long rem = flat;
        double wq = 1.0;
        for (int d = 0; d < n; ++d) {
            const int i = static_cast<int>(rem % quad_points_per_dim);
            rem /= quad_points_per_dim;
            t[d] = node[i];
            wq *= wt[i];
        }
        const double w = weyl_weight(cls, t);
        fill_full_angles(cls, t, angles);
        const double f = integrand(angles);
        if (!std::isfinite(f)) throw NumericalError("weyl_average: non-finite integrand value");
        integral_fw += wq * w * f;
        integral_w += wq * w;
    }
    // The density constants are taken verbatim; integrating 1 must give 1.
    // If that self-test ever failed we would fall back to the normalized
    // quotient rather than silently trust either side.
    if (std::abs(integral_w - 1.0) > 1e-6) return integral_fw / integral_w;
    return integral_fw;
}

double char_poly_modulus(const EigenAngles& angles, double x) {
    double log_abs = 0.0;
    bool zero = false;
    for (double a : angles.angles) {
        const double s = std::abs(std::sin(kPi * (a + x)));
        if (s == 0.0) {
            zero = true;
            break;
        }
        log_abs += std::log(2.0 * s);
    }
    return zero ? 0.0 : std::exp(log_abs);
}

double char_poly_modulus(const UnitarySample& sample, double x) {
    return char_poly_modulus(eigen_angles(sample), x);
}

void write_angle_csv(std::ostream& os, const std::vector<EigenAngles>& batch,
                     std::uint64_t seed, const std::string& label) {
    if (batch.empty()) throw std::invalid_argument("write_angle_csv: empty batch");
    os << "# class=" << (label.empty() ? batch.front().cls.name() : label)
       << " seed=" << seed << " count=" << batch.size() << "\n";
    char buf[64];
    for (const auto& ea : batch) {
        for (std::size_t i = 0; i < ea.angles.size(); ++i) {
            const int len = std::snprintf(buf, sizeof buf, "%.17g", ea.angles[i]);
            os.write(buf, len);
            os << (i + 1 < ea.angles.size() ? ',' : '\n');
        }
    }
}

std::vector<EigenAngles> read_angle_csv(std::istream& is) {
    std::string line;
    std::vector<EigenAngles> out;
    Group g = Group::Unitary;
    bool have_class = false, mixture = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("class=");
            if (pos != std::string::npos) {
                const std::string tag = line.substr(pos + 6, line.find('(', pos) - pos - 6);
                if (tag == "U") g = Group::Unitary;
                else if (tag == "SO+") g = Group::SpecialOrthogonalEven;
                else if (tag == "SO-") g = Group::SpecialOrthogonalOdd;
                else if (tag == "USp") g = Group::UnitarySymplectic;
                else if (tag == "O") mixture = true;
                else throw std::invalid_argument("angle CSV: unknown class tag " + tag);
                have_class = true;
            }
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.empty()) continue;
        if (!have_class) throw std::invalid_argument("angle CSV: missing class header");
        Group gi = g;
        if (mixture)
            gi = (row.size() % 2 == 0) ? Group::SpecialOrthogonalEven
                                       : Group::SpecialOrthogonalOdd;
        out.push_back(EigenAngles{row, SymmetryClass(gi, static_cast<int>(row.size()))});
    }
    return out;
}

}  // namespace rmt
