#include "cesaro/specfun.hpp"

#include "cesaro/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace cesaro {

namespace {

constexpr std::int64_t kExactBinomialLimit = 60;

// Pascal rows 0..60; C(60, 30) ~ 1.18e17 still fits in 64 bits.
const auto& pascal_table() {
    static const auto table = [] {
        std::array<std::array<std::uint64_t, kExactBinomialLimit + 1>, kExactBinomialLimit + 1> t{};
        for (std::size_t k = 0; k <= kExactBinomialLimit; ++k) {
            t[k][0] = 1;
            for (std::size_t m = 1; m <= k; ++m) {
                t[k][m] = t[k - 1][m - 1] + (m <= k - 1 ? t[k - 1][m] : 0);
            }
        }
        return t;
    }();
    return table;
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("log_gamma: argument must be positive and finite, got " + std::to_string(x));
    }
    // glibc's lgamma is accurate to a few ulps on the positive axis, including near 1 and 2.
    return std::lgamma(x);
}

double gen_binomial(std::int64_t n, double alpha) {
    if (n < 0 || !(alpha >= 0.0)) {
        throw DomainError("gen_binomial: need n >= 0 and alpha >= 0");
    }
    if (n == 0 || alpha == 0.0) {
        return 1.0;
    }
    const auto nd = static_cast<double>(n);
    return std::exp(log_gamma(nd + alpha + 1.0) - log_gamma(alpha + 1.0) - log_gamma(nd + 1.0));
}

double gamma_ratio(std::int64_t k, double a, double b) {
    const auto kd = static_cast<double>(k);
    if (k < 0 || !(kd + a > 0.0) || !(kd + b > 0.0)) {
        throw DomainError("gamma_ratio: need k >= 0, k+a > 0 and k+b > 0");
    }
    if (a == b) {
        return 1.0;
    }
    return std::exp(log_gamma(kd + a) - log_gamma(kd + b));
}

std::uint64_t integer_binomial_exact(std::int64_t k, std::int64_t m) {
    if (k < 0 || m < 0) {
        throw DomainError("integer_binomial_exact: negative argument");
    }
    if (k > kExactBinomialLimit) {
        throw DomainError("integer_binomial_exact: k = " + std::to_string(k) + " exceeds 60");
    }
    if (m > k) {
        return 0;
    }
    return pascal_table()[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
}

double log_integer_binomial(std::int64_t k, std::int64_t m) {
    if (m < 0 || k < m) {
        throw DomainError("log_integer_binomial: need 0 <= m <= k");
    }
    if (k <= kExactBinomialLimit) {
        return std::log(static_cast<double>(integer_binomial_exact(k, m)));
    }
    const auto kd = static_cast<double>(k);
    const auto md = static_cast<double>(m);
    return log_gamma(kd + 1.0) - log_gamma(md + 1.0) - log_gamma(kd - md + 1.0);
}

double integer_binomial(std::int64_t k, std::int64_t m) {
    if (k < 0 || m < 0) {
        throw DomainError("integer_binomial: negative argument");
    }
    if (m > k) {
        return 0.0;
    }
    if (k <= kExactBinomialLimit) {
        return static_cast<double>(integer_binomial_exact(k, m));
    }
    // Small m: the falling-factorial product is more accurate than log-gamma cancellation.
    const auto mm = std::min(m, k - m);
    if (mm <= 16) {
        double value = 1.0;
        for (std::int64_t i = 1; i <= mm; ++i) {
            value = value * static_cast<double>(k - mm + i) / static_cast<double>(i);
        }
        return value;
    }
    return std::exp(log_integer_binomial(k, m));
}

double gamma_ratio_partial_sum(std::int64_t n, double alpha) {
    if (n < 0 || !(alpha > 0.5 && alpha < 1.0)) {
        throw DomainError("gamma_ratio_partial_sum: need n >= 0 and alpha in (1/2, 1)");
    }
    // ratio_j = Gamma(j+alpha)/Gamma(j+1), advanced by ratio_{j+1} = ratio_j (j+alpha)/(j+1).
    double ratio = std::exp(log_gamma(alpha));
    double sum = 0.0;
    for (std::int64_t j = 0; j <= n; ++j) {
        sum += ratio * ratio;
        const auto jd = static_cast<double>(j);
        ratio *= (jd + alpha) / (jd + 1.0);
    }
    return sum;
}

double gamma_ratio_power_sup(std::int64_t k_max, double alpha) {
    if (k_max < 0 || !(alpha > 0.0)) {
        throw DomainError("gamma_ratio_power_sup: need k_max >= 0 and alpha > 0");
    }
    double ratio = std::exp(log_gamma(alpha));
    double sup = 0.0;
    for (std::int64_t k = 0; k <= k_max; ++k) {
        const auto kd = static_cast<double>(k);
        sup = std::max(sup, ratio * std::pow(kd + 1.0, 1.0 - alpha));
        ratio *= (kd + alpha) / (kd + 1.0);
    }
    return sup;
}

} // namespace cesaro
