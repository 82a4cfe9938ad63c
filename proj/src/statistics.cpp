#include "rmt/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "rmt/quadrature.hpp"
#include "rmt/special.hpp"

namespace rmt {

std::vector<double> UnfoldedPoints::gaps() const {
    std::vector<double> g;
    if (points.size() < 2) return g;
    if (period <= 0.0) {
        for (std::size_t i = 1; i < points.size(); ++i)
            g.push_back(points[i] - points[i - 1]);
        return g;
    }
    // circular: start at the first nonnegative point, walk around the circle,
    // which cuts exactly at angle 0 and drops the wrap-around gap
    const std::size_t n = points.size();
    std::size_t first = 0;
    while (first < n && points[first] < 0.0) ++first;
    if (first == n) first = 0;
    for (std::size_t step = 1; step < n; ++step) {
        const std::size_t i = (first + step) % n;
        const std::size_t j = (first + step - 1) % n;
        double d = points[i] - points[j];
        if (d < 0.0) d += period;
        g.push_back(d);
    }
    return g;
}

double UnfoldedPoints::mean_gap() const {
    const auto g = gaps();
    if (g.empty()) return 0.0;
    double s = 0.0;
    for (double v : g) s += v;
    return s / g.size();
}

UnfoldedPoints unfold_angles(const EigenAngles& angles) {
    const double n = static_cast<double>(angles.cls.matrix_dim);
    UnfoldedPoints out;
    out.period = n;
    out.source = angles.cls.name();
    out.points.reserve(angles.angles.size());
    for (double a : angles.angles) {
        const double signed_rep = (a <= 0.5) ? a : a - 1.0;  // (-1/2, 1/2]
        out.points.push_back(n * signed_rep);
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

UnfoldedPoints unfold_zeros(const ZeroList& zeros, ZeroUnfoldMode mode) {
    UnfoldedPoints out;
    out.period = 0.0;
    out.source = "zeros";
    // Density mode applies the zero-counting main term (gamma/2pi)
    // log(gamma/(2pi e)), whose derivative is the zero density
    // log(gamma/2pi)/2pi, so consecutive gaps have asymptotic mean 1.  The
    // map is strictly increasing for gamma > 2pi (points below 2pi e come
    // out mildly negative, which gap statistics tolerate).
    const double floor_t = kTwoPi;
    out.points.reserve(zeros.ordinates.size());
    for (double g : zeros.ordinates) {
        if (g <= floor_t)
            throw std::invalid_argument("unfold_zeros: ordinate below validity threshold 2*pi");
        const double scaled = (mode == ZeroUnfoldMode::Paper)
                                  ? g * std::log(g) / kTwoPi
                                  : g / kTwoPi * std::log(g / (kTwoPi * std::exp(1.0)));
        out.points.push_back(scaled);
    }
    out.source += (mode == ZeroUnfoldMode::Paper) ? " (paper unfolding)" : " (density unfolding)";
    return out;
}

TestFunction TestFunction::gaussian(int arity) {
    if (arity < 1) throw std::invalid_argument("TestFunction::gaussian: arity >= 1");
    TestFunction f;
    f.arity = arity;
    f.translation_invariant = false;
    f.fourier_support = std::numeric_limits<double>::infinity();
    f.eval = [](std::span<const double> x) {
        double q = 0.0;
        for (double v : x) q += v * v;
        return std::exp(-kPi * q);
    };
    if (arity == 1)
        f.fourier = [](double u) { return std::exp(-kPi * u * u); };
    return f;
}

TestFunction TestFunction::gaussian_difference() {
    TestFunction f;
    f.arity = 2;
    f.translation_invariant = true;
    f.fourier_support = std::numeric_limits<double>::infinity();
    f.eval = [](std::span<const double> x) {
        const double u = x[0] - x[1];
        return std::exp(-kPi * u * u);
    };
    return f;
}

TestFunction TestFunction::fejer_montgomery(double support, double log_t) {
    if (!(support > 0.0) || !(log_t > 0.0))
        throw std::invalid_argument("fejer_montgomery: positive support and log T");
    TestFunction f;
    f.arity = 1;
    f.translation_invariant = true;
    f.fourier_support = support;
    // r(u) = int_{-a}^{a} (1 - |alpha|/a) e^{i alpha u log T} d alpha
    //      = a * (sin(a u log T / 2) / (a u log T / 2))^2
    f.eval = [support, log_t](std::span<const double> x) {
        const double z = 0.5 * support * x[0] * log_t;
        if (std::abs(z) < 1e-8) return support;
        const double s = std::sin(z) / z;
        return support * s * s;
    };
    f.fourier = [support](double alpha) {
        const double t = 1.0 - std::abs(alpha) / support;
        return t > 0.0 ? t : 0.0;
    };
    return f;
}

TestFunction TestFunction::fejer_unfolded(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("fejer_unfolded: positive support");
    TestFunction f;
    f.arity = 1;
    f.translation_invariant = true;
    f.fourier_support = a;
    // standard pair: r(u) = a sinc_pi^2(a u)  <->  r^(xi) = triangle on (-a, a)
    f.eval = [a](std::span<const double> x) {
        const double s = sinc_pi(a * x[0]);
        return a * s * s;
    };
    f.fourier = [a](double xi) {
        const double t = 1.0 - std::abs(xi) / a;
        return t > 0.0 ? t : 0.0;
    };
    return f;
}

TestFunction TestFunction::smoothed_box(double lo, double hi, double w) {
    if (!(w > 0.0) || !(hi > lo)) throw std::invalid_argument("smoothed_box: bad parameters");
    TestFunction f;
    f.arity = 1;
    f.translation_invariant = false;
    f.fourier_support = std::numeric_limits<double>::infinity();
    f.eval = [lo, hi, w](std::span<const double> x) {
        const double v = x[0];
        if (v <= lo - w || v >= hi + w) return 0.0;
        if (v >= lo + w && v <= hi - w) return 1.0;
        const double edge = (v < lo + w) ? (v - (lo - w)) / (2.0 * w)
                                         : ((hi + w) - v) / (2.0 * w);
        return 0.5 - 0.5 * std::cos(kPi * edge);
    };
    return f;
}

Histogram Histogram::with_bins(double lo, double hi, double width) {
    if (!(width > 0.0) || !(hi > lo)) throw std::invalid_argument("Histogram: bad bins");
    Histogram h;
    const int bins = static_cast<int>(std::ceil((hi - lo) / width - 1e-12));
    h.edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i) h.edges[i] = lo + i * width;
    h.counts.assign(bins, 0.0);
    h.total_weight = 0.0;
    return h;
}

void Histogram::add(double x) {
    total_weight += 1.0;
    if (x < edges.front() || x >= edges.back()) return;
    const double w = bin_width();
    auto idx = static_cast<std::size_t>((x - edges.front()) / w);
    if (idx >= counts.size()) idx = counts.size() - 1;
    counts[idx] += 1.0;
}

double Histogram::density(std::size_t bin) const {
    if (total_weight <= 0.0) return 0.0;
    return counts[bin] / (total_weight * bin_width());
}

namespace {

double circular_difference(double a, double b, double period) {
    // representative of a - b in [0, period)
    double d = std::fmod(a - b, period);
    if (d < 0.0) d += period;
    return d;
}

}  // namespace

double empirical_pair_correlation(const std::vector<UnfoldedPoints>& samples, double alpha,
                                  double beta) {
    if (samples.empty()) throw std::invalid_argument("empirical_pair_correlation: no samples");
    if (!(0.0 < alpha && alpha < beta))
        throw std::invalid_argument("empirical_pair_correlation: need 0 < alpha < beta");
    double pairs = 0.0, total_points = 0.0;
    for (const auto& s : samples) {
        const auto& p = s.points;
        total_points += static_cast<double>(p.size());
        if (s.period > 0.0) {
            for (std::size_t i = 0; i < p.size(); ++i)
                for (std::size_t j = 0; j < p.size(); ++j) {
                    if (i == j) continue;
                    const double d = circular_difference(p[i], p[j], s.period);
                    if (d >= alpha && d <= beta) pairs += 1.0;
                }
        } else {
            for (std::size_t i = 0; i < p.size(); ++i)
                for (std::size_t j = 0; j < p.size(); ++j) {
                    if (i == j) continue;
                    const double d = p[i] - p[j];
                    if (d >= alpha && d <= beta) pairs += 1.0;
                }
        }
    }
    if (total_points == 0.0) return 0.0;
    return pairs / total_points;
}

namespace {

// sum of f over ordered tuples of distinct indices (recursive over arity)
double tuple_sum(const std::vector<double>& p, const TestFunction& f) {
    const int n = f.arity;
    std::vector<int> idx(n, -1);
    std::vector<char> used(p.size(), 0);
    std::vector<double> args(n);
    double acc = 0.0;
    std::function<void(int)> rec = [&](int depth) {
        if (depth == n) {
            acc += f.eval(args);
            return;
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (used[i]) continue;
            used[i] = 1;
            args[depth] = p[i];
            rec(depth + 1);
            used[i] = 0;
        }
    };
    rec(0);
    return acc;
}

// faster pair path for arity 2
double pair_sum(const std::vector<double>& p, const TestFunction& f) {
    double acc = 0.0;
    double args[2];
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (i == j) continue;
            args[0] = p[i];
            args[1] = p[j];
            acc += f.eval(std::span<const double>(args, 2));
        }
    return acc;
}

}  // namespace

double empirical_n_level(const std::vector<UnfoldedPoints>& samples, const TestFunction& f) {
    if (samples.empty()) throw std::invalid_argument("empirical_n_level: no samples");
    double acc = 0.0;
    for (const auto& s : samples) {
        if (static_cast<int>(s.points.size()) < f.arity)
            throw std::invalid_argument("empirical_n_level: arity exceeds sample size");
        if (f.arity == 1) {
            double one[1];
            for (double v : s.points) {
                one[0] = v;
                acc += f.eval(std::span<const double>(one, 1));
            }
        } else if (f.arity == 2) {
            acc += pair_sum(s.points, f);
        } else {
            acc += tuple_sum(s.points, f);
        }
    }
    return acc / static_cast<double>(samples.size());
}

double empirical_n_correlation(const std::vector<UnfoldedPoints>& samples,
                               const TestFunction& f) {
    if (samples.empty()) throw std::invalid_argument("empirical_n_correlation: no samples");
    if (!f.translation_invariant)
        throw std::invalid_argument("empirical_n_correlation: f must be translation invariant");
    double acc = 0.0, total_points = 0.0;
    for (const auto& s : samples) {
        total_points += static_cast<double>(s.points.size());
        if (f.arity == 2) acc += pair_sum(s.points, f);
        else acc += tuple_sum(s.points, f);
    }
    return acc / total_points;
}

Histogram empirical_spacings(const std::vector<UnfoldedPoints>& samples, double lo, double hi,
                             double width) {
    Histogram h = Histogram::with_bins(lo, hi, width);
    for (const auto& s : samples) {
        if (s.points.size() < 2)
            throw std::invalid_argument("empirical_spacings: samples need >= 2 points");
        for (double g : s.gaps()) h.add(g);
    }
    return h;
}

std::vector<double> jth_lowest_values(const std::vector<UnfoldedPoints>& samples, int j) {
    if (j < 1) throw std::invalid_argument("jth_lowest: j >= 1");
    std::vector<double> vals;
    vals.reserve(samples.size());
    for (const auto& s : samples) {
        std::vector<double> nonneg;
        for (double v : s.points)
            if (v >= 0.0) nonneg.push_back(v);
        if (static_cast<int>(nonneg.size()) < j)
            throw std::invalid_argument("jth_lowest: j out of range for a sample");
        std::nth_element(nonneg.begin(), nonneg.begin() + (j - 1), nonneg.end());
        vals.push_back(nonneg[j - 1]);
    }
    return vals;
}

Histogram jth_lowest(const std::vector<UnfoldedPoints>& samples, int j, double lo, double hi,
                     double width) {
    Histogram h = Histogram::with_bins(lo, hi, width);
    for (double v : jth_lowest_values(samples, j)) h.add(v);
    return h;
}

namespace {

double montgomery_weight(double u) { return 4.0 / (4.0 + u * u); }

}  // namespace

double montgomery_f(const ZeroList& zeros, double t_max, double alpha) {
    const std::size_t n = zeros.count_below(t_max);
    if (n < 50) throw std::invalid_argument("montgomery_f: need N(T) >= 50 zeros");
    const double log_t = std::log(t_max);
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double d = zeros.ordinates[i] - zeros.ordinates[j];
            acc += std::polar(montgomery_weight(d), alpha * d * log_t);
        }
    acc /= static_cast<double>(n);
    if (std::abs(acc.imag()) > 1e-10)
        throw NumericalError("montgomery_f: imaginary residual above 1e-10");
    return acc.real();
}

double weighted_pair_sum(const ZeroList& zeros, double t_max, const TestFunction& r) {
    if (r.arity != 1) throw std::invalid_argument("weighted_pair_sum: arity-1 r required");
    const std::size_t n = zeros.count_below(t_max);
    if (n < 50) throw std::invalid_argument("weighted_pair_sum: need N(T) >= 50 zeros");
    double acc = 0.0;
    double arg[1];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double d = zeros.ordinates[i] - zeros.ordinates[j];
            arg[0] = d;
            acc += r.eval(std::span<const double>(arg, 1)) * montgomery_weight(d);
        }
    return acc / static_cast<double>(n);
}

double montgomery_dual_integral(const ZeroList& zeros, double t_max, const TestFunction& r,
                                double alpha_max, int panels, int nodes) {
    if (!r.fourier) throw std::invalid_argument("montgomery_dual_integral: r needs a transform");
    auto f = [&](double alpha) { return r.fourier(alpha) * montgomery_f(zeros, t_max, alpha); };
    return integrate_panels(f, -alpha_max, alpha_max, panels, nodes);
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double c = cdf(samples[i]);
        d = std::max(d, std::abs((i + 1) / n - c));
        d = std::max(d, std::abs(i / n - c));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i;
        else ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

std::size_t ZeroList::count_below(double t) const {
    return std::upper_bound(ordinates.begin(), ordinates.end(), t) - ordinates.begin();
}

void ZeroList::validate() const {
    double prev = 0.0;
    for (double g : ordinates) {
        if (!(g > prev)) throw std::invalid_argument("ZeroList: ordinates not strictly increasing");
        prev = g;
    }
}

}  // namespace rmt
