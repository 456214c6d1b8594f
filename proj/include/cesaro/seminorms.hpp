#pragma once

#include "cesaro/measures.hpp"
#include "cesaro/series.hpp"

#include <string>
#include <string_view>

namespace cesaro {

enum class SeminormMethod { closed_form_sigma, local_douglas, measure_mixture, area_quadrature };

std::string_view to_string(SeminormMethod method);

/// A value of D_{mu,m}(f) together with how it was obtained.
struct SeminormReport {
    double value = 0.0;
    SeminormMethod method = SeminormMethod::measure_mixture;
    double error_estimate = 0.0;  // 0 on exact paths
};

/// {"value": ..., "method": "...", "error_estimate": ...}
std::string to_json(const SeminormReport& report);

/// D_{sigma,m}(f) = sum_{k>=m} C(k,m) |a_k|^2, m >= 0.
double dirichlet_sigma(const PowerSeries& f, int m);

/// sum |a_k|^2.
double h2_norm_sq(const PowerSeries& f);

/// Local Dirichlet integral D_{lambda,m}(f) = D_{sigma,m-1}(L_lambda[f]).
///
/// For m = 0 this is |f(lambda)|^2, the point-mass case of D_{mu,0}(f) = integral of |f|^2 dmu.
double dirichlet_point(const PowerSeries& f, Complex lambda, int m);

/// D_{mu,m}(f) by disintegration over mu: atoms use the local formula, the Lebesgue part the
/// closed form, and the density part an exact trapezoidal rule in the base point.
/// The zero measure gives 0.
SeminormReport dirichlet_measure(const PowerSeries& f, const MeasureOnCircle& mu, int m);

/// ||f||_{H^2}^2 + D_{mu,m}(f).
double space_norm_sq(const PowerSeries& f, const MeasureOnCircle& mu, int m);

/// Direct quadrature of (1/(m!(m-1)!)) int_D |f^(m)|^2 P_mu (1-|z|^2)^{m-1} dA.
///
/// Gauss-Legendre in t = |z|^2 on [0,1] times a uniform angular rule. angular_nodes is the
/// minimum ring size; rings are enlarged so the trigonometric part is integrated exactly and,
/// with atoms present, so the Poisson-kernel aliasing r^N falls below 1e-17.
/// error_estimate = |I(radial_nodes) - I(radial_nodes / 2)|.
/// Requires m >= 1, radial_nodes >= 8 and angular_nodes >= 2 deg f + 2 (ConfigError otherwise).
SeminormReport dirichlet_area_oracle(const PowerSeries& f, const MeasureOnCircle& mu, int m, int radial_nodes,
                                     int angular_nodes);

/// Doubles radial_nodes from the given start until successive oracle values agree to
/// tol * (1 + |value|), or throws ConvergenceError once node_cap is exceeded.
SeminormReport converged_area_oracle(const PowerSeries& f, const MeasureOnCircle& mu, int m, int radial_nodes = 16,
                                     int angular_nodes = 0, double tol = 1e-8, int node_cap = 4096);

struct TelescopingCheck {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// lhs = sum_{k>=1} D_{mu,j}(L^k f), rhs = D_{mu,j+1}(f). Requires 0 <= j <= m-1.
TelescopingCheck telescoping_check(const PowerSeries& f, const MeasureOnCircle& mu, int j, int m);

struct KernelSeries {
    double partial_sum = 0.0;
    double tail_bound = 0.0;
};

/// sum_{j>=m} (j+1) Gamma(j-m+1)/Gamma(j+1) rho^j for rho = |w|^2 < 1, summed to double
/// precision with a geometric bound on the remainder.
KernelSeries evaluation_kernel_series(int m, double rho);

struct EvaluationBound {
    double lhs = 0.0;  // |f(w)|^2
    double rhs = 0.0;  // 4 (m-1)!/mu(T) * kernel series * D_{mu,m}(f)
};

/// Point-evaluation bound on functions with a_0 = ... = a_{m-1} = 0.
/// Throws DomainError if f has low-order terms, mu(T) = 0, or |w| >= 1.
EvaluationBound evaluation_bound(const PowerSeries& f, const MeasureOnCircle& mu, int m, Complex w);

} // namespace cesaro
