#include "rmt/arithmetic.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "rmt/special.hpp"

namespace rmt {

namespace {

std::vector<std::uint32_t> g_primes;
std::uint32_t g_prime_limit = 0;
std::mutex g_prime_mutex;

}  // namespace

const std::vector<std::uint32_t>& primes_up_to(std::uint32_t limit) {
    std::lock_guard<std::mutex> lock(g_prime_mutex);
    if (limit > g_prime_limit) {
        std::vector<bool> composite(limit + 1, false);
        g_primes.clear();
        for (std::uint32_t p = 2; p <= limit; ++p) {
            if (composite[p]) continue;
            g_primes.push_back(p);
            for (std::uint64_t q = static_cast<std::uint64_t>(p) * p; q <= limit; q += p)
                composite[q] = true;
        }
        g_prime_limit = limit;
    }
    return g_primes;
}

namespace {

// C(k+j-1, j) with 64-bit overflow guard
std::uint64_t prime_power_dk(int k, int j) {
    unsigned __int128 num = 1;
    for (int m = 1; m <= j; ++m) {
        num = num * static_cast<unsigned>(k + m - 1);
        num /= static_cast<unsigned>(m);  // exact: prefix products of binomials
        if (num > static_cast<unsigned __int128>(UINT64_MAX))
            throw std::overflow_error("d_k: binomial overflows 64 bits");
    }
    return static_cast<std::uint64_t>(num);
}

}  // namespace

std::uint64_t d_k(int k, std::uint64_t n) {
    if (k < 1) throw std::domain_error("d_k: k >= 1");
    if (n < 1) throw std::domain_error("d_k: n >= 1");
    if (n > 1000000000000ULL) throw std::overflow_error("d_k: n above the 10^12 guard");
    std::uint64_t result = 1;
    std::uint64_t rem = n;
    const auto& ps = primes_up_to(1000000);
    for (std::uint32_t p : ps) {
        if (static_cast<std::uint64_t>(p) * p > rem) break;
        int j = 0;
        while (rem % p == 0) {
            rem /= p;
            ++j;
        }
        if (j > 0) {
            const unsigned __int128 prod =
                static_cast<unsigned __int128>(result) * prime_power_dk(k, j);
            if (prod > static_cast<unsigned __int128>(UINT64_MAX))
                throw std::overflow_error("d_k: value overflows 64 bits");
            result = static_cast<std::uint64_t>(prod);
        }
    }
    if (rem > 1) {
        // remaining prime factor
        const unsigned __int128 prod =
            static_cast<unsigned __int128>(result) * prime_power_dk(k, 1);
        if (prod > static_cast<unsigned __int128>(UINT64_MAX))
            throw std::overflow_error("d_k: value overflows 64 bits");
        result = static_cast<std::uint64_t>(prod);
    }
    return result;
}

namespace {

// ---- truncated power series, used to expand log(local factor) ------------

struct Series {
    std::vector<double> c;
    explicit Series(int degree) : c(degree + 1, 0.0) {}
    int degree() const { return static_cast<int>(c.size()) - 1; }
};

Series mul(const Series& a, const Series& b) {
    Series r(a.degree());
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.c[i] == 0.0) continue;
        for (int j = 0; i + j <= a.degree(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}

Series pow_int(const Series& a, int e) {
    Series r(a.degree());
    r.c[0] = 1.0;
    for (int i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

// log of a series with constant term 1:  l_n = f_n - (1/n) sum m l_m f_{n-m}
Series log_series(const Series& f) {
    Series l(f.degree());
    for (int n = 1; n <= f.degree(); ++n) {
        double s = 0.0;
        for (int m = 1; m < n; ++m) s += m * l.c[m] * f.c[n - m];
        l.c[n] = f.c[n] - s / n;
    }
    return l;
}

// (1 - sign*y)^{-k} = sum C(k+m-1, m) (sign y)^m
Series binomial_inverse(int degree, int k, double sign) {
    Series r(degree);
    double coeff = 1.0;
    double sg = 1.0;
    for (int m = 0; m <= degree; ++m) {
        r.c[m] = coeff * sg;
        coeff *= static_cast<double>(k + m) / (m + 1);
        sg *= sign;
    }
    return r;
}

double binom(int n, int r) {
    double v = 1.0;
    for (int m = 1; m <= r; ++m) v = v * (n - r + m) / m;
    return v;
}

// log(local factor) as a series in x = 1/p for the zeta family
Series zeta_log_local_series(int k, int degree) {
    Series poly(degree);
    for (int m = 0; m <= std::min(degree, k - 1); ++m) {
        const double b = binom(k - 1, m);
        poly.c[m] = b * b;
    }
    Series one_minus(degree);
    one_minus.c[0] = 1.0;
    if (degree >= 1) one_minus.c[1] = -1.0;
    const Series f = mul(pow_int(one_minus, (k - 1) * (k - 1)), poly);
    return log_series(f);
}

// log(local factor) as a series in y = 1/sqrt(p) for the quadratic family
Series quadratic_log_local_series(int k, int degree) {
    Series bracket(degree);
    {
        const Series a = binomial_inverse(degree, k, +1.0);  // (1-y)^{-k}
        const Series b = binomial_inverse(degree, k, -1.0);  // (1+y)^{-k}
        for (int m = 0; m <= degree; ++m) bracket.c[m] = 0.5 * (a.c[m] + b.c[m]);
        if (degree >= 2) bracket.c[2] += 1.0;  // + 1/p = y^2
    }
    Series one_minus_x(degree);  // 1 - y^2
    one_minus_x.c[0] = 1.0;
    if (degree >= 2) one_minus_x.c[2] = -1.0;
    Series inv_one_plus_x(degree);  // (1 + y^2)^{-1}
    for (int m = 0; m <= degree; m += 2) inv_one_plus_x.c[m] = (m % 4 == 0) ? 1.0 : -1.0;
    Series f = mul(pow_int(one_minus_x, k * (k + 1) / 2), inv_one_plus_x);
    f = mul(f, bracket);
    return log_series(f);
}

// Hecke local polynomials (Euler-product parts of Eqs for a_1..a_4)
Series hecke_local_poly(int k, int degree) {
    Series poly(degree);
    switch (k) {
        case 1:
            poly.c[0] = 1.0;  // a_1 = zeta(2): product part is trivial
            return poly;
        case 2:
            poly.c[0] = 1.0;
            if (degree >= 2) poly.c[2] = 1.0;  // 1 + p^{-2}
            return poly;
        case 3: {
            Series q(degree);
            const double coef[] = {1.0, 1.0, 4.0, 1.0, 1.0};
            for (int m = 0; m <= std::min(degree, 4); ++m) q.c[m] = coef[m];
            Series one_minus(degree);
            one_minus.c[0] = 1.0;
            if (degree >= 1) one_minus.c[1] = -1.0;
            return mul(one_minus, q);
        }
        case 4: {
            Series q(degree);
            const double coef[] = {1.0, 3.0, 11.0, 10.0, 11.0, 3.0, 1.0};
            for (int m = 0; m <= std::min(degree, 6); ++m) q.c[m] = coef[m];
            Series one_minus(degree);
            one_minus.c[0] = 1.0;
            if (degree >= 1) one_minus.c[1] = -1.0;
            return mul(pow_int(one_minus, 3), q);
        }
        default:
            throw std::domain_error("a_hecke: closed forms tabulated for k = 1..4 only");
    }
}

double eval_poly(const Series& s, double x) {
    double v = 0.0;
    for (int m = s.degree(); m >= 0; --m) v = v * x + s.c[m];
    return v;
}

// real zeta at integer argument n >= 2 (direct sum + Euler-Maclaurin tail)
double real_zeta_int(int n) {
    if (n == 2) return kPi * kPi / 6.0;
    const int m = 200;
    double acc = 0.0;
    for (int i = m; i >= 1; --i) acc += std::pow(static_cast<double>(i), -n);
    const double mn = std::pow(static_cast<double>(m), -n);
    acc += mn * m / (n - 1.0) - 0.5 * mn;             // integral minus half term
    acc += bernoulli_over_factorial(1) * n * mn / m;  // B_2 correction
    acc += bernoulli_over_factorial(2) * n * (n + 1.0) * (n + 2.0) * mn /
           (static_cast<double>(m) * m * m);
    return acc;
}

// prime zeta P(s) = sum_p p^{-s} = sum_j mu(j)/j log zeta(js), integer s >= 2
double prime_zeta(int s) {
    static const int mu[] = {0,  1, -1, -1, 0, -1, 1, -1, 0,  0, 1, -1, 0,
                             -1, 1, 1,  0, -1, 0, -1, 0,  1, 1, -1, 0, 0};
    double acc = 0.0;
    for (int j = 1; j <= 25; ++j) {
        if (mu[j] == 0) continue;
        if (j * s > 128) break;
        const double z = (j * s <= 128) ? real_zeta_int(j * s) : 1.0;
        acc += mu[j] * std::log(z) / j;
        if (std::abs(z - 1.0) < 1e-18) break;
    }
    return acc;
}

// sum_{p > P} p^{-s}
double prime_tail(int s, std::uint64_t cutoff) {
    const auto& ps = primes_up_to(static_cast<std::uint32_t>(cutoff));
    double partial = 0.0;
    for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
        if (*it > cutoff) continue;
        partial += std::pow(static_cast<double>(*it), -s);
    }
    return std::max(0.0, prime_zeta(s) - partial);
}

struct ProductAccumulator {
    double log_sum = 0.0, comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = log_sum + y;
        comp = (t - log_sum) - y;
        log_sum = t;
    }
};

// Certified truncation: the product over p <= P is completed with the tail
//   sum_{p > P} log L(1/p) = sum_m c_m sum_{p > P} p^{-m}
// summed through the series; what remains uncertain is the series truncation
// (bounded by the last coefficient times its prime tail) plus a rounding
// floor, and that bound is what the result reports.
EulerProductResult run_product(const std::string& family, int k, std::uint64_t cutoff,
                               double (*local)(int, double), const Series& log_local_raw,
                               bool series_in_sqrt) {
    if (cutoff < 1000) throw std::domain_error("Euler product: prime cutoff >= 10^3");

    // collapse a 1/sqrt(p) series onto integer powers of 1/p (odd powers must
    // vanish: the bracket terms are even in 1/sqrt(p))
    Series log_local(series_in_sqrt ? log_local_raw.degree() / 2 : log_local_raw.degree());
    if (series_in_sqrt) {
        for (int m = 1; m <= log_local_raw.degree(); m += 2)
            if (std::abs(log_local_raw.c[m]) > 1e-9)
                throw std::logic_error("Euler product: odd half-power survived");
        for (int m = 0; m <= log_local.degree(); ++m) log_local.c[m] = log_local_raw.c[2 * m];
    } else {
        log_local.c = log_local_raw.c;
    }
    if (std::abs(log_local.c[0]) > 1e-9 || std::abs(log_local.c[1]) > 1e-9)
        throw std::logic_error("Euler product: local factor not 1 + O(p^{-2})");

    const auto& ps = primes_up_to(static_cast<std::uint32_t>(cutoff));
    ProductAccumulator acc;
    for (std::uint32_t p : ps) {
        if (p > cutoff) break;
        acc.add(std::log(local(k, static_cast<double>(p))));
    }
    double last_term = 0.0;
    for (int m = 2; m <= log_local.degree(); ++m) {
        if (log_local.c[m] == 0.0) continue;
        const double t = log_local.c[m] * prime_tail(m, cutoff);
        acc.add(t);
        last_term = std::abs(t);
    }
    const double value = std::exp(acc.log_sum);
    const double tail_log = 10.0 * last_term + 1e-13;
    return {value, cutoff, value * std::expm1(tail_log), family};
}

}  // namespace

double zeta_local_factor(int k, double p) {
    const double x = 1.0 / p;
    double poly = 0.0;
    for (int m = k - 1; m >= 0; --m) {
        const double b = binom(k - 1, m);
        poly = poly * x + b * b;
    }
    return std::pow(1.0 - x, (k - 1) * (k - 1)) * poly;
}

double zeta_inner_series_direct(int k, double p) {
    const double x = 1.0 / p;
    double sum = 0.0, term = 1.0;
    for (int j = 0;; ++j) {
        sum += term;
        const double ratio = (static_cast<double>(k + j) / (j + 1));
        const double next = term * ratio * ratio * x;
        if (next < 1e-17 * sum && ratio * ratio * x < 0.9) break;
        term = next;
        if (j > 10000) throw std::logic_error("zeta_inner_series_direct: no convergence");
    }
    return sum;
}

double quadratic_local_factor(int k, double p) {
    const double x = 1.0 / p;
    const double y = 1.0 / std::sqrt(p);
    const double bracket =
        0.5 * (std::pow(1.0 - y, -k) + std::pow(1.0 + y, -k)) + x;
    return std::pow(1.0 - x, 0.5 * k * (k + 1)) / (1.0 + x) * bracket;
}

double hecke_local_factor(int k, double p) {
    return eval_poly(hecke_local_poly(k, 8), 1.0 / p);
}

EulerProductResult a_k_zeta(int k, std::uint64_t prime_cutoff) {
    if (k < 1) throw std::domain_error("a_k_zeta: k >= 1");
    return run_product("zeta", k, prime_cutoff, &zeta_local_factor,
                       zeta_log_local_series(k, 10), /*series_in_sqrt=*/false);
}

EulerProductResult a_k_quadratic(int k, std::uint64_t prime_cutoff) {
    if (k < 0) throw std::domain_error("a_k_quadratic: k >= 0");
    return run_product("quadratic", k, prime_cutoff, &quadratic_local_factor,
                       quadratic_log_local_series(k, 20), /*series_in_sqrt=*/true);
}

EulerProductResult a_hecke(int k, std::uint64_t prime_cutoff) {
    const double zeta2 = kPi * kPi / 6.0;
    EulerProductResult r = run_product("hecke", k, prime_cutoff, &hecke_local_factor,
                                       log_series(hecke_local_poly(k, 10)),
                                       /*series_in_sqrt=*/false);
    double zeta_power = 1.0;
    switch (k) {
        case 1: zeta_power = zeta2; break;
        case 2: zeta_power = zeta2 * zeta2; break;
        case 3: zeta_power = zeta2 * zeta2 * zeta2; break;
        case 4: zeta_power = std::pow(zeta2, 5); break;
        default: throw std::domain_error("a_hecke: k in 1..4");
    }
    r.value *= zeta_power;
    r.tail_bound *= zeta_power;
    return r;
}

BigRational quadratic_moment_coefficient(int k) {
    if (k < 1) throw std::domain_error("quadratic_moment_coefficient: k >= 1");
    BigRational r(1);
    BigInt fact = 1, fact2 = 1;
    for (int l = 1; l <= k; ++l) {
        fact *= l;  // l!
        fact2 *= (2 * l - 1);
        fact2 *= (2 * l);  // (2l)!
        r *= BigRational(fact, fact2);
    }
    return r;
}

BigRational hecke_moment_coefficient(int k) {
    if (k < 1) throw std::domain_error("hecke_moment_coefficient: k >= 1");
    BigRational r(BigInt(1) << (k - 1));
    BigInt fact = 1, fact2 = 1;
    for (int l = 1; l <= k - 1; ++l) {
        fact *= l;
        fact2 *= (2 * l - 1);
        fact2 *= (2 * l);
        r *= BigRational(fact, fact2);
    }
    return r;
}

double diagonal_dirichlet_asymptotic(int k, double x, std::uint64_t prime_cutoff) {
    if (!(x > std::exp(1.0))) throw std::domain_error("diagonal asymptotic: x > e");
    const double a = a_k_zeta(k, prime_cutoff).value;
    return a * std::pow(std::log(x), k * k) / std::tgamma(1.0 + k * k);
}

double zeta_moment_rhs(int k, double t, std::uint64_t prime_cutoff) {
    if (!(t > kTwoPi * std::exp(1.0))) throw std::domain_error("zeta_moment_rhs: T > 2 pi e");
    // g_k a_k / Gamma(1+k^2) * log^{k^2} T, assembled as g_k times the
    // diagonal asymptotic so the ratio identity is exact by construction
    return static_cast<double>(g_k(k)) * diagonal_dirichlet_asymptotic(k, t, prime_cutoff);
}

double quadratic_moment_rhs(int k, double d, std::uint64_t prime_cutoff) {
    if (!(d > std::exp(1.0))) throw std::domain_error("quadratic_moment_rhs: D > e");
    const double coeff = static_cast<double>(quadratic_moment_coefficient(k));
    return coeff * a_k_quadratic(k, prime_cutoff).value *
           std::pow(std::log(d), 0.5 * k * (k + 1));
}

double hecke_moment_rhs(int k, double q, std::uint64_t prime_cutoff) {
    if (!(q > std::exp(1.0))) throw std::domain_error("hecke_moment_rhs: q > e");
    const double coeff = static_cast<double>(hecke_moment_coefficient(k));
    return coeff * a_hecke(k, prime_cutoff).value * std::pow(std::log(q), 0.5 * k * (k - 1));
}

}  // namespace rmt
