#include "cmi/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cmi {

double std_normal_cdf(double t) {
    return 0.5 * std::erfc(-t / std::sqrt(2.0));
}

namespace {

constexpr int kMaxIter = 200;

// Lower-tail series: P(a,x) = x^a e^-x / Gamma(a+1) * sum_k x^k / (a+1)...(a+k).
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("incomplete gamma series failed to converge");
}

// Upper-tail Lentz continued fraction for Q(a,x), x >= a+1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("incomplete gamma continued fraction failed to converge");
}

} // namespace

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a))
        throw std::invalid_argument("regularized_gamma_p requires a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a))
        throw std::invalid_argument("regularized_gamma_q requires a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chisq_sf(double x, double df) {
    if (!(df > 0.0))
        throw std::invalid_argument("chisq_sf requires df > 0");
    if (x <= 0.0) return 1.0;
    return regularized_gamma_q(df / 2.0, x / 2.0);
}

double chisq_quantile(double level, double df) {
    if (!(level >= 0.0) || !(level < 1.0))
        throw std::invalid_argument("chisq_quantile requires level in [0, 1)");
    if (!(df > 0.0))
        throw std::invalid_argument("chisq_quantile requires df > 0");
    if (level == 0.0) return 0.0;

    double lo = 0.0;
    double hi = df + 10.0 * std::sqrt(2.0 * df) + 10.0;
    while (chisq_sf(hi, df) > 1.0 - level) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (1.0 - chisq_sf(mid, df) < level)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double log_factorial(long long k) {
    if (k < 0)
        throw std::invalid_argument("log_factorial requires k >= 0");
    return std::lgamma(static_cast<double>(k) + 1.0);
}

LogFactorial::LogFactorial(long long max_k) {
    if (max_k < 0)
        throw std::invalid_argument("LogFactorial requires max_k >= 0");
    table_.resize(static_cast<std::size_t>(max_k) + 1);
    table_[0] = 0.0;
    for (long long k = 1; k <= max_k; ++k)
        table_[static_cast<std::size_t>(k)] =
            table_[static_cast<std::size_t>(k - 1)] + std::log(static_cast<double>(k));
}

double LogFactorial::operator()(long long k) const {
    if (k < 0)
        throw std::invalid_argument("LogFactorial requires k >= 0");
    if (static_cast<std::size_t>(k) < table_.size())
        return table_[static_cast<std::size_t>(k)];
    return std::lgamma(static_cast<double>(k) + 1.0);
}

} // namespace cmi
