#include "cesaro/hadamard.hpp"

#include "cesaro/errors.hpp"
#include "cesaro/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace cesaro {

namespace {

double norm2(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& x : v) {
        s += std::norm(x);
    }
    return std::sqrt(s);
}

std::string format_entry(Complex z, bool complex_output) {
    char buf[96];
    if (complex_output) {
        std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
    } else {
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
    }
    return buf;
}

} // namespace

MultiplierSymbol make_symbol(std::vector<Complex> coefficients, std::string label) {
    if (label.empty()) {
        throw DomainError("MultiplierSymbol: label must be nonempty");
    }
    for (const auto& c : coefficients) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw DomainError("MultiplierSymbol: coefficients must be finite");
        }
    }
    return {std::move(coefficients), std::move(label)};
}

MultiplierMatrix::MultiplierMatrix(const MultiplierSymbol& c, int m, std::size_t dim) : m_(m) {
    if (m < 1) {
        throw DomainError("MultiplierMatrix: m must be positive");
    }
    if (dim == 0) {
        throw DomainError("MultiplierMatrix: dim must be positive");
    }
    diag_.resize(dim);
    diff_.resize(dim);
    scale_.resize(dim);
    const auto first = static_cast<std::size_t>(m - 1);
    for (std::size_t p = 0; p < dim; ++p) {
        const auto j = first + p;
        diag_[p] = c[j + 1];
        diff_[p] = c[j + 1] - c[j];
        scale_[p] = std::sqrt(integer_binomial(static_cast<std::int64_t>(j), m - 1));
    }
}

Complex MultiplierMatrix::entry(std::size_t row, std::size_t col) const {
    if (row >= dim() || col >= dim()) {
        throw DomainError("MultiplierMatrix::entry: index out of range");
    }
    if (row == col) {
        return diag_[row];
    }
    if (row < col) {
        return scale_[row] / scale_[col] * diff_[col];
    }
    return {};
}

std::vector<Complex> MultiplierMatrix::apply(std::span<const Complex> x) const {
    if (x.size() != dim()) {
        throw DomainError("MultiplierMatrix::apply: dimension mismatch");
    }
    std::vector<Complex> y(dim());
    Complex suffix{};  // sum_{q>p} diff_q x_q / scale_q
    for (std::size_t p = dim(); p-- > 0;) {
        y[p] = diag_[p] * x[p] + scale_[p] * suffix;
        suffix += diff_[p] * x[p] / scale_[p];
    }
    return y;
}

std::vector<Complex> MultiplierMatrix::apply_adjoint(std::span<const Complex> y) const {
    if (y.size() != dim()) {
        throw DomainError("MultiplierMatrix::apply_adjoint: dimension mismatch");
    }
    std::vector<Complex> x(dim());
    Complex prefix{};  // sum_{p<q} scale_p y_p
    for (std::size_t q = 0; q < dim(); ++q) {
        x[q] = std::conj(diag_[q]) * y[q] + std::conj(diff_[q]) / scale_[q] * prefix;
        prefix += scale_[q] * y[q];
    }
    return x;
}

Eigen::MatrixXcd MultiplierMatrix::to_dense() const {
    const auto n = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            a(i, j) = entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    return a;
}

double MultiplierMatrix::diagonal_max() const {
    double best = 0.0;
    for (const auto& d : diag_) {
        best = std::max(best, std::abs(d));
    }
    return best;
}

double MultiplierMatrix::strict_upper_sq() const {
    double sum = 0.0;
    double prefix = 0.0;  // sum_{p<q} scale_p^2
    for (std::size_t q = 0; q < dim(); ++q) {
        sum += std::norm(diff_[q]) / (scale_[q] * scale_[q]) * prefix;
        prefix += scale_[q] * scale_[q];
    }
    return sum;
}

std::size_t capture_dim(const MultiplierSymbol& c, int m) {
    const auto top = static_cast<std::int64_t>(c.support_top());
    return static_cast<std::size_t>(std::max<std::int64_t>(1, top - m + 2));
}

MultiplierMatrix build_matrix(const MultiplierSymbol& c, int m, std::size_t dim) {
    return MultiplierMatrix(c, m, dim);
}

MultiplierMatrix build_matrix(const MultiplierSymbol& c, int m) {
    return MultiplierMatrix(c, m, capture_dim(c, m));
}

PowerIterationResult power_iteration_norm(const MultiplierMatrix& matrix, double tol, int max_iterations) {
    if (!(tol > 0.0)) {
        throw DomainError("power_iteration_norm: tol must be positive");
    }
    const auto n = matrix.dim();
    PowerIterationResult result;
    std::vector<Complex> x(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
    for (int it = 1; it <= max_iterations; ++it) {
        const auto y = matrix.apply(x);
        auto z = matrix.apply_adjoint(y);
        const double rho = norm2(y) * norm2(y);
        result.iterations = it;
        result.norm = std::sqrt(rho);
        if (rho == 0.0) {
            result.right_vector = x;
            return result;
        }
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            residual += std::norm(z[i] - rho * x[i]);
        }
        residual = std::sqrt(residual);
        const double zn = norm2(z);
        if (residual <= tol * rho) {
            result.right_vector = std::move(x);
            return result;
        }
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = z[i] / zn;
        }
    }
    throw ConvergenceError("power iteration did not converge in " + std::to_string(max_iterations) + " iterations",
                           result.norm);
}

double dense_spectral_norm(const MultiplierMatrix& matrix) {
    const Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix.to_dense());
    return svd.singularValues()(0);
}

double spectral_norm(const MultiplierMatrix& matrix, double tol) {
    if (!(tol > 0.0)) {
        throw DomainError("spectral_norm: tol must be positive");
    }
    if (matrix.dim() <= kDenseNormLimit) {
        return dense_spectral_norm(matrix);
    }
    return power_iteration_norm(matrix, tol).norm;
}

double HsBounds::hilbert_schmidt() const {
    return diagonal_max + std::sqrt(strict_upper_sq);
}

HsBounds hs_bounds(const MultiplierMatrix& matrix) {
    return {matrix.diagonal_max(), matrix.strict_upper_sq()};
}

double hs_upper_bound(const MultiplierSymbol& c, int m, std::size_t dim) {
    return hs_bounds(build_matrix(c, m, dim)).hilbert_schmidt();
}

double adjoint_row_norm(const MultiplierSymbol& c, int m) {
    if (m < 1) {
        throw DomainError("adjoint_row_norm: m must be positive");
    }
    const auto first = static_cast<std::size_t>(m);
    double sum = std::norm(c[first]);
    for (std::size_t j = first; j <= c.support_top(); ++j) {
        sum += std::norm(c[j + 1] - c[j]) / integer_binomial(static_cast<std::int64_t>(j), m - 1);
    }
    return sum;
}

MultiplierSymbol cesaro_symbol(std::int64_t n, double alpha) {
    const auto w = cesaro_weights(n, alpha);
    char label[64];
    std::snprintf(label, sizeof label, "cesaro(n=%lld,alpha=%g)", static_cast<long long>(n), alpha);
    return make_symbol(std::vector<Complex>(w.weights.begin(), w.weights.end()), label);
}

MultiplierSymbol sqrt_fejer_symbol(std::int64_t n) {
    if (n < 1) {
        throw DomainError("sqrt_fejer_symbol: n must be positive");
    }
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    const auto denom = static_cast<double>(n + 1);
    for (std::int64_t k = 0; k <= n; ++k) {
        c[static_cast<std::size_t>(k)] = std::sqrt(1.0 - static_cast<double>(k) / denom);
    }
    return make_symbol(std::move(c), "sqrt_fejer(n=" + std::to_string(n) + ")");
}

MultiplierSymbol parity_symbol(std::int64_t top_degree) {
    if (top_degree < 0) {
        throw DomainError("parity_symbol: top degree must be nonnegative");
    }
    std::vector<Complex> c(static_cast<std::size_t>(top_degree) + 1);
    for (std::int64_t j = 1; j <= top_degree; j += 2) {
        c[static_cast<std::size_t>(j)] = 1.0;
    }
    return make_symbol(std::move(c), "parity(top=" + std::to_string(top_degree) + ")");
}

double paq_lower_bound(std::int64_t n, int m) {
    if (n < 1 || m < 1) {
        throw DomainError("paq_lower_bound: need n >= 1 and m >= 1");
    }
    return std::sqrt(std::log(2.0 + static_cast<double>(n) / 2.0)) / std::ldexp(1.0, m + 1);
}

double remark_parity_lower_bound(std::int64_t n, int m) {
    if (m < 1 || n < m) {
        throw DomainError("remark_parity_lower_bound: need m >= 1 and n >= m");
    }
    if (n % 2 != 0) {
        throw DomainError("remark_parity_lower_bound: n must be even");
    }
    return std::exp(0.5 * (log_integer_binomial(n + 1, m) - log_integer_binomial(n, m - 1)));
}

double cesaro_strict_upper_sq(std::int64_t n, double alpha, int m) {
    if (!(alpha > 0.0) || m < 1) {
        throw DomainError("cesaro_strict_upper_sq: need alpha > 0 and m >= 1");
    }
    if (n < m) {
        return 0.0;
    }
    const double binom = gen_binomial(n, alpha);
    const double prefactor = alpha * alpha / (static_cast<double>(m) * std::pow(std::tgamma(alpha + 1.0), 2) * binom * binom);
    // ratio_k = Gamma(k+alpha)/Gamma(k+1) with k = n - j.
    double ratio = std::tgamma(alpha);
    double sum = 0.0;
    for (std::int64_t k = 0; k <= n - m; ++k) {
        const auto j = n - k;
        sum += static_cast<double>(j - m + 1) * ratio * ratio;
        ratio *= (static_cast<double>(k) + alpha) / (static_cast<double>(k) + 1.0);
    }
    return prefactor * sum;
}

double cesaro_strict_upper_relaxed(std::int64_t n, double alpha, int m) {
    if (m < 1) {
        throw DomainError("cesaro_strict_upper_relaxed: m must be positive");
    }
    if (n < m) {
        return 0.0;
    }
    const double binom = gen_binomial(n, alpha);
    const double prefactor = alpha * alpha * static_cast<double>(n - m + 1) /
                             (static_cast<double>(m) * std::pow(std::tgamma(alpha + 1.0), 2) * binom * binom);
    return prefactor * gamma_ratio_partial_sum(n - m, alpha);
}

void write_matrix_csv(const MultiplierMatrix& matrix, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open matrix CSV for writing: " + path.string());
    }
    const auto n = matrix.dim();
    bool complex_output = false;
    for (std::size_t i = 0; i < n && !complex_output; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (matrix.entry(i, j).imag() != 0.0) {
                complex_output = true;
                break;
            }
        }
    }
    out << "basis";
    for (std::size_t j = 0; j < n; ++j) {
        out << ',' << matrix.first_index() + j;
    }
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << matrix.first_index() + i;
        for (std::size_t j = 0; j < n; ++j) {
            out << ',' << format_entry(matrix.entry(i, j), complex_output);
        }
        out << '\n';
    }
    if (!out) {
        throw std::runtime_error("failed writing matrix CSV: " + path.string());
    }
}

} // namespace cesaro
