#pragma once

#include "cesaro/series.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace cesaro {

/// Finitely supported Hadamard multiplier c(z) = sum_{j<=J} c_j z^j.
struct MultiplierSymbol {
    std::vector<Complex> coefficients;
    std::string label;

    Complex operator[](std::size_t j) const noexcept {
        return j < coefficients.size() ? coefficients[j] : Complex{};
    }
    /// Highest index with a stored coefficient (0 for an empty symbol).
    std::size_t support_top() const noexcept { return coefficients.empty() ? 0 : coefficients.size() - 1; }
    PowerSeries to_series() const { return PowerSeries(coefficients); }
};

/// Validates finiteness and a nonempty label.
MultiplierSymbol make_symbol(std::vector<Complex> coefficients, std::string label);

/// Truncation of A_c(m) in the orthonormal basis { C(j,m-1)^{-1/2} z^j : j >= m-1 } of the
/// sigma-weighted space of order m-1. Basis index j sits at storage row/column j - (m-1).
///
/// Entries: a_{i,i} = c_{i+1}; a_{i,j} = sqrt(C(i,m-1)/C(j,m-1)) (c_{j+1} - c_j) for i < j; else 0.
/// Only the three generating vectors are stored, so products with the matrix cost O(dim).
class MultiplierMatrix {
public:
    MultiplierMatrix(const MultiplierSymbol& c, int m, std::size_t dim);

    int m() const noexcept { return m_; }
    std::size_t dim() const noexcept { return diag_.size(); }
    /// Basis index of storage row/column 0.
    std::size_t first_index() const noexcept { return static_cast<std::size_t>(m_ - 1); }

    /// Entry at storage position (row, col).
    Complex entry(std::size_t row, std::size_t col) const;

    std::vector<Complex> apply(std::span<const Complex> x) const;
    std::vector<Complex> apply_adjoint(std::span<const Complex> y) const;

    Eigen::MatrixXcd to_dense() const;

    /// max_i |a_{i,i}|.
    double diagonal_max() const;
    /// sum_{i<j} |a_{i,j}|^2.
    double strict_upper_sq() const;

private:
    int m_;
    std::vector<Complex> diag_;  // c_{j+1}
    std::vector<Complex> diff_;  // c_{j+1} - c_j
    std::vector<double> scale_;  // sqrt(C(j, m-1))
};

/// Dimension that holds every nonzero entry of A_c(m): support_top - m + 2, at least 1.
std::size_t capture_dim(const MultiplierSymbol& c, int m);

MultiplierMatrix build_matrix(const MultiplierSymbol& c, int m, std::size_t dim);
MultiplierMatrix build_matrix(const MultiplierSymbol& c, int m);

/// Matrices up to this dimension go through a dense SVD in spectral_norm.
inline constexpr std::size_t kDenseNormLimit = 512;

struct PowerIterationResult {
    double norm = 0.0;
    int iterations = 0;
    std::vector<Complex> right_vector;  // unit vector attaining (approximately) the norm
};

/// Power iteration on A^H A from the normalized all-ones vector. Stops once the Gram
/// residual ||A^H A x - rho x|| <= tol * rho; throws ConvergenceError at max_iterations.
PowerIterationResult power_iteration_norm(const MultiplierMatrix& matrix, double tol, int max_iterations = 100000);

/// Largest singular value by dense SVD.
double dense_spectral_norm(const MultiplierMatrix& matrix);

/// Dense SVD for dim <= kDenseNormLimit, power iteration beyond.
double spectral_norm(const MultiplierMatrix& matrix, double tol);

/// Both forms of the diagonal + strict-upper split: the Hilbert-Schmidt version
/// max|a_ii| + sqrt(sum_{i<j}|a_ij|^2), and the variant without the square root.
struct HsBounds {
    double diagonal_max = 0.0;
    double strict_upper_sq = 0.0;
    double hilbert_schmidt() const;
    double without_root() const { return diagonal_max + strict_upper_sq; }
};

HsBounds hs_bounds(const MultiplierMatrix& matrix);
double hs_upper_bound(const MultiplierSymbol& c, int m, std::size_t dim);

/// |c_m|^2 + sum_{j>=m} |c_{j+1} - c_j|^2 / C(j, m-1): the squared norm of the adjoint applied to z^{m-1}.
double adjoint_row_norm(const MultiplierSymbol& c, int m);

/// h_n, whose Hadamard product with f is sigma_n^alpha[f].
MultiplierSymbol cesaro_symbol(std::int64_t n, double alpha);

/// g_n with c_k = sqrt(1 - k/(n+1)), k = 0..n.
MultiplierSymbol sqrt_fejer_symbol(std::int64_t n);

/// c_j = 1 for odd j, 0 for even j, j = 0..top_degree.
MultiplierSymbol parity_symbol(std::int64_t top_degree);

/// 2^{-(m+1)} sqrt(ln(2 + n/2)).
double paq_lower_bound(std::int64_t n, int m);

/// C(n, m-1)^{-1/2} C(n+1, m)^{1/2}, the norm of A_c(m) on the normalized basis vector of index n
/// for the parity symbol. Requires n even and n >= m.
double remark_parity_lower_bound(std::int64_t n, int m);

/// sum_{i<j} |a_{i,j}|^2 for h_n through the binomial-identity reduction
/// alpha^2 / (m Gamma(alpha+1)^2 C(n+alpha,alpha)^2) * sum_{j=m}^n (j-m+1) Gamma(n-j+alpha)^2/Gamma(n-j+1)^2.
double cesaro_strict_upper_sq(std::int64_t n, double alpha, int m);

/// The relaxed form (n-m+1) * alpha^2 / (m Gamma(alpha+1)^2 C(n+alpha,alpha)^2) * sum_{j=0}^{n-m} Gamma(j+alpha)^2/Gamma(j+1)^2,
/// an upper bound for cesaro_strict_upper_sq. alpha in (1/2, 1).
double cesaro_strict_upper_relaxed(std::int64_t n, double alpha, int m);

/// Dense CSV with basis indices as row and column headers; complex entries use "re+imj" only
/// when some entry has a nonzero imaginary part.
void write_matrix_csv(const MultiplierMatrix& matrix, const std::filesystem::path& path);

} // namespace cesaro
