#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cesaro {

using Complex = std::complex<double>;

/// Tolerance on |lambda| - 1 for points that must lie on the unit circle.
inline constexpr double kUnitCircleTol = 1e-12;

/// A polynomial sum_{k<=N} a_k z^k, the finite stand-in for a Taylor series on the disc.
///
/// Trailing zero coefficients are always trimmed, so the zero function is the empty
/// sequence and degree() is unambiguous.
class PowerSeries {
public:
    PowerSeries() = default;
    explicit PowerSeries(std::vector<Complex> coefficients);
    PowerSeries(std::initializer_list<Complex> coefficients);

    static PowerSeries monomial(std::size_t power, Complex value = 1.0);
    static PowerSeries constant(Complex value) { return PowerSeries({value}); }

    std::span<const Complex> coefficients() const noexcept { return coefficients_; }
    std::size_t size() const noexcept { return coefficients_.size(); }
    bool is_zero() const noexcept { return coefficients_.empty(); }

    /// Degree, or nullopt for the zero function.
    std::optional<std::size_t> degree() const noexcept;

    /// a_k, with a_k = 0 beyond the stored range.
    Complex operator[](std::size_t k) const noexcept {
        return k < coefficients_.size() ? coefficients_[k] : Complex{};
    }

    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

    PowerSeries& operator+=(const PowerSeries& other);
    PowerSeries& operator-=(const PowerSeries& other);
    PowerSeries& operator*=(Complex scale);

    friend PowerSeries operator+(PowerSeries lhs, const PowerSeries& rhs) { return lhs += rhs; }
    friend PowerSeries operator-(PowerSeries lhs, const PowerSeries& rhs) { return lhs -= rhs; }
    friend PowerSeries operator*(Complex scale, PowerSeries f) { return f *= scale; }

private:
    void trim();

    std::vector<Complex> coefficients_;
};

/// Weights w_k = C(n-k+alpha, alpha) / C(n+alpha, alpha), k = 0..n, of the generalized Cesaro mean.
struct CesaroWeights {
    std::int64_t n = 0;
    double alpha = 0.0;
    std::vector<double> weights;
};

/// f = constant + (z - base_point) * quotient, with |base_point| = 1.
struct LocalShiftDecomposition {
    Complex constant;
    PowerSeries quotient;
    Complex base_point;
};

/// Horner evaluation at |z| < 1.
Complex evaluate(const PowerSeries& f, Complex z);

/// Evaluation at a point of the unit circle (polynomials extend continuously to T).
Complex evaluate_on_circle(const PowerSeries& f, Complex zeta);

/// m-th derivative.
PowerSeries derivative(const PowerSeries& f, int m);

/// Coefficientwise product (f * g)(z) = sum a_j b_j z^j.
PowerSeries hadamard_product(const PowerSeries& f, const PowerSeries& g);

/// Taylor partial sum s_n[f].
PowerSeries partial_sum(const PowerSeries& f, std::int64_t n);

CesaroWeights cesaro_weights(std::int64_t n, double alpha);

/// sigma_n^alpha[f]: coefficient k is w_k a_k for k <= n, zero beyond.
PowerSeries generalized_cesaro(const PowerSeries& f, std::int64_t n, double alpha);

/// L f = (f(z) - f(0)) / z.
PowerSeries backward_shift(const PowerSeries& f);

/// L^times f.
PowerSeries backward_shift(const PowerSeries& f, std::int64_t times);

/// Solves a_0 = a - b_0 lambda, a_k = b_{k-1} - b_k lambda from the top coefficient down.
LocalShiftDecomposition local_shift(const PowerSeries& f, Complex lambda);

/// constant + (z - base_point) * quotient.
PowerSeries reconstruct(const LocalShiftDecomposition& decomposition);

/// Gamma(n+1) Gamma(n+alpha-j+1) / (Gamma(n-j+1) Gamma(n+alpha+1)), the factor in
/// L^j(sigma_n^alpha[f]) = factor * sigma_{n-j}^alpha[L^j f]. Requires 1 <= j <= n.
double cesaro_shift_factor(std::int64_t n, double alpha, std::int64_t j);

/// f(lambda z): coefficients a_k lambda^k.
PowerSeries rotate(const PowerSeries& f, Complex lambda);

/// JSON list of [re, im] pairs.
std::string to_json(const PowerSeries& f);
PowerSeries power_series_from_json(std::string_view text);

} // namespace cesaro
