#pragma once

#include <vector>

namespace cmi {

// P(N(0,1) <= t); absolute error well below 1e-10 (delegates to erfc).
double std_normal_cdf(double t);

// Regularized incomplete gamma P(a,x) and Q(a,x) = 1 - P(a,x), a > 0, x >= 0.
// Series expansion below x = a+1, continued fraction above; both capped at
// 200 iterations (throws std::runtime_error if a tail fails to converge).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Chi-square survival function P(Chi2_df > x); df > 0 need not be an integer.
double chisq_sf(double x, double df);

// Inverse of the chi-square CDF at `level` in [0, 1); bisection on chisq_sf.
double chisq_quantile(double level, double df);

double log_factorial(long long k); // lgamma(k+1)

// Partial-sum table of log k! for k <= max_k, lgamma fallback beyond.
class LogFactorial {
public:
    explicit LogFactorial(long long max_k);
    double operator()(long long k) const;

private:
    std::vector<double> table_;
};

} // namespace cmi
