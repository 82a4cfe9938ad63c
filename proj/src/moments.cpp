#include "rmt/moments.hpp"

#include <cmath>
#include <future>
#include <stdexcept>
#include <vector>

#include "rmt/special.hpp"

namespace rmt {

namespace {

// Kahan-compensated accumulator for long log-gamma sums
struct Compensated {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

double moment_u(int n, double s) {
    if (n < 1) throw std::domain_error("moment_u: N >= 1");
    if (!(s > -0.5)) throw std::domain_error("moment_u: s > -1/2");
    Compensated acc;
    for (int j = 1; j <= n; ++j)
        acc.add(std::lgamma(j) + std::lgamma(j + 2.0 * s) - 2.0 * std::lgamma(j + s));
    return std::exp(acc.sum);
}

double moment_sp(int two_n, double s) {
    if (two_n < 2 || two_n % 2 != 0) throw std::domain_error("moment_sp: even dimension >= 2");
    if (!(s > -0.5)) throw std::domain_error("moment_sp: s > -1/2");
    const int n = two_n / 2;
    Compensated acc;
    acc.add(2.0 * n * s * std::log(2.0));
    for (int j = 1; j <= n; ++j)
        acc.add(std::lgamma(1.0 + n + j) + std::lgamma(0.5 + s + j) -
                std::lgamma(0.5 + j) - std::lgamma(1.0 + s + n + j));
    return std::exp(acc.sum);
}

double moment_so_even(int two_n, double s) {
    if (two_n < 2 || two_n % 2 != 0)
        throw std::domain_error("moment_so_even: even dimension >= 2");
    if (!(s > -0.5)) throw std::domain_error("moment_so_even: s > -1/2 (pole at -1/2)");
    const int n = two_n / 2;
    Compensated acc;
    acc.add(2.0 * n * s * std::log(2.0));
    for (int j = 1; j <= n; ++j)
        acc.add(std::lgamma(n + j - 1.0) + std::lgamma(s + j - 0.5) -
                std::lgamma(j - 0.5) - std::lgamma(s + j + n - 1.0));
    return std::exp(acc.sum);
}

BigRational limit_ratio_u_exact(int k) {
    if (k < 0) throw std::domain_error("limit_ratio_u_exact: k >= 0");
    BigInt num = 1, den = 1;
    BigInt fact_j = 1;  // j!
    for (int j = 0; j < k; ++j) {
        if (j > 0) fact_j *= j;
        BigInt fact_jk = fact_j;  // (j+k)!
        for (int m = j + 1; m <= j + k; ++m) fact_jk *= m;
        num *= fact_j;
        den *= fact_jk;
    }
    return BigRational(num, den);
}

double limit_ratio_u(double s) {
    if (!(s > -0.5)) throw std::domain_error("limit_ratio_u: s > -1/2");
    const double r = std::round(s);
    if (r >= 0.0 && std::abs(s - r) < 1e-12)
        return static_cast<double>(limit_ratio_u_exact(static_cast<int>(r)));
    return barnes_g_ratio(s);
}

BigInt g_k(int k) {
    if (k < 1 || k > 64) throw std::domain_error("g_k: k in 1..64");
    BigInt fact_ksq = 1;
    for (int m = 2; m <= k * k; ++m) fact_ksq *= m;
    const BigRational ratio = limit_ratio_u_exact(k);
    const BigRational g = BigRational(fact_ksq) * ratio;
    if (boost::multiprecision::denominator(g) != 1)
        throw std::logic_error("g_k: value is not an integer");
    return boost::multiprecision::numerator(g);
}

double selberg(int n, double alpha, double beta, double gamma) {
    if (n < 1) throw std::domain_error("selberg: n >= 1");
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::domain_error("selberg: need alpha > 0 and beta > 0");
    const double lower =
        (n > 1) ? -std::min({1.0 / n, alpha / (n - 1.0), beta / (n - 1.0)}) : -1.0 / n;
    if (!(gamma > lower)) throw std::domain_error("selberg: gamma below convergence bound");
    Compensated acc;
    acc.add((gamma * n * (n - 1.0) + n * (alpha + beta - 1.0)) * std::log(2.0));
    for (int j = 0; j < n; ++j)
        acc.add(std::lgamma(1.0 + gamma + j * gamma) + std::lgamma(alpha + j * gamma) +
                std::lgamma(beta + j * gamma) - std::lgamma(1.0 + gamma) -
                std::lgamma(alpha + beta + gamma * (n + j - 1.0)));
    return std::exp(acc.sum);
}

MonteCarloMoment mc_moment(const SymmetryClass& cls, double s, double phase_x,
                           std::uint64_t count, std::uint64_t seed, int threads) {
    if (count < 100) throw std::invalid_argument("mc_moment: count >= 100");
    const bool unitary = cls.group == Group::Unitary;
    const double exponent = unitary ? 2.0 * s : s;
    std::vector<double> vals(count);
    auto work = [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t i = b; i < e; ++i) {
            const EigenAngles ea = eigen_angles(sample_haar(cls, seed, i));
            const double m = char_poly_modulus(ea, unitary ? phase_x : 0.0);
            vals[i] = std::pow(m, exponent);
        }
    };
    if (threads <= 1 || count < 256) {
        work(0, count);
    } else {
        const std::uint64_t chunk = (count + threads - 1) / threads;
        std::vector<std::future<void>> futs;
        for (std::uint64_t b = 0; b < count; b += chunk)
            futs.push_back(std::async(std::launch::async, work, b, std::min(b + chunk, count)));
        for (auto& f : futs) f.get();
    }
    // fixed-order summation keeps results independent of thread count
    Compensated mean_acc;
    for (double v : vals) mean_acc.add(v);
    const double mean = mean_acc.sum / count;
    Compensated var_acc;
    for (double v : vals) var_acc.add((v - mean) * (v - mean));
    const double variance = var_acc.sum / (count - 1.0);
    return {mean, std::sqrt(variance / count), count};
}

}  // namespace rmt
