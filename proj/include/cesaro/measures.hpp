#pragma once

#include "cesaro/series.hpp"

#include <string_view>
#include <vector>

namespace cesaro {

/// A point mass `mass * delta_point` on the unit circle.
struct Atom {
    Complex point;
    double mass = 0.0;
};

/// Finite nonnegative measure on T: atoms + lebesgue_mass * sigma + w dsigma,
/// where w(theta) = d_0 + 2 Re sum_{k>=1} d_k e^{ik theta} is a real trigonometric polynomial.
///
/// sigma is normalized Lebesgue measure. The density is stored as d_0..d_K (d_{-k} = conj(d_k));
/// d_0 must be real. Construction validates every invariant and throws DomainError on violation.
class MeasureOnCircle {
public:
    MeasureOnCircle() = default;
    MeasureOnCircle(std::vector<Atom> atoms, double lebesgue_mass, std::vector<Complex> density = {});

    static MeasureOnCircle zero() { return {}; }
    static MeasureOnCircle lebesgue(double mass = 1.0) { return {{}, mass}; }
    static MeasureOnCircle dirac(Complex point, double mass = 1.0) { return {{{point, mass}}, 0.0}; }
    /// Point mass at e^{i theta}, theta in degrees.
    static MeasureOnCircle dirac_degrees(double theta_degrees, double mass = 1.0);

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    double lebesgue_mass() const noexcept { return lebesgue_mass_; }
    const std::vector<Complex>& density() const noexcept { return density_; }

    /// Trigonometric degree K of the density, 0 when absent.
    std::size_t density_degree() const noexcept { return density_.empty() ? 0 : density_.size() - 1; }
    bool has_density() const noexcept { return !density_.empty(); }

    /// Density value w(theta).
    double density_at(double theta) const;

    bool is_zero() const;

    friend MeasureOnCircle operator+(const MeasureOnCircle& a, const MeasureOnCircle& b);
    friend MeasureOnCircle operator*(double scale, const MeasureOnCircle& mu);

private:
    std::vector<Atom> atoms_;
    double lebesgue_mass_ = 0.0;
    std::vector<Complex> density_;
};

double total_mass(const MeasureOnCircle& mu);

/// P_mu(z) = integral of (1-|z|^2)/|z-zeta|^2 dmu(zeta), |z| < 1.
double poisson_integral(const MeasureOnCircle& mu, Complex z);

/// Parses "sigma", "zero", "delta:<degrees>", "density:[d0,d1re,d1im,...]",
/// "mix:<spec>+<spec>+..." and weighted terms "<w>*<spec>". Throws ConfigError.
MeasureOnCircle parse_measure(std::string_view spec);

} // namespace cesaro
