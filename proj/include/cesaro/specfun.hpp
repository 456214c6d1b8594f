#pragma once

#include <cstdint>

namespace cesaro {

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// Generalized binomial C(n + alpha, alpha) = Gamma(n+alpha+1) / (Gamma(alpha+1) Gamma(n+1)).
///
/// Evaluated as a single exponential of log-gamma differences so that it stays finite
/// for n far beyond the factorial overflow point.
double gen_binomial(std::int64_t n, double alpha);

/// Gamma(k+a) / Gamma(k+b). Requires k+a > 0 and k+b > 0.
double gamma_ratio(std::int64_t k, double a, double b);

/// Exact C(k, m) for k <= 60; 0 when k < m. Throws DomainError for k > 60.
std::uint64_t integer_binomial_exact(std::int64_t k, std::int64_t m);

/// C(k, m) as a real: rounded exact value for k <= 60, log-gamma path beyond, 0 when k < m.
double integer_binomial(std::int64_t k, std::int64_t m);

/// ln C(k, m) for k >= m >= 0.
double log_integer_binomial(std::int64_t k, std::int64_t m);

/// sum_{j=0}^{n} Gamma(j+alpha)^2 / Gamma(j+1)^2, for alpha in (1/2, 1).
double gamma_ratio_partial_sum(std::int64_t n, double alpha);

/// Empirical sup over 0 <= k <= k_max of Gamma(k+alpha)/Gamma(k+1) * (k+1)^{1-alpha}.
///
/// This is the smallest C1 with Gamma(k+alpha)/Gamma(k+1) <= C1 (k+1)^{alpha-1} on the scanned range.
double gamma_ratio_power_sup(std::int64_t k_max, double alpha);

} // namespace cesaro
