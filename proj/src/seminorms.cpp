#include "cesaro/seminorms.hpp"

#include "cesaro/errors.hpp"
#include "cesaro/quadrature.hpp"
#include "cesaro/specfun.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cesaro {

namespace {

constexpr double kAliasingTarget = 1e-17;
constexpr std::size_t kMaxRingNodes = std::size_t{1} << 24;

double factorial(int k) {
    return std::tgamma(static_cast<double>(k) + 1.0);
}

std::size_t degree_or_zero(const PowerSeries& f) {
    return f.degree().value_or(0);
}

// Trapezoidal average over the circle of density(theta) * D_{e^{i theta}, m}(f). The integrand is a
// trigonometric polynomial of degree <= deg f + K, so deg f + K + 2 equispaced nodes integrate it exactly.
double density_part(const PowerSeries& f, const MeasureOnCircle& mu, int m) {
    const std::size_t nodes = degree_or_zero(f) + mu.density_degree() + 2;
    double sum = 0.0;
    for (std::size_t p = 0; p < nodes; ++p) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(nodes);
        const double w = mu.density_at(theta);
        if (w != 0.0) {
            sum += w * dirichlet_point(f, std::polar(1.0, theta), m);
        }
    }
    return sum / static_cast<double>(nodes);
}

// Mean over a ring of |g|^2 P_mu at radius r.
double ring_average(const PowerSeries& g, const MeasureOnCircle& mu, double r, std::size_t nodes) {
    double sum = 0.0;
    for (std::size_t p = 0; p < nodes; ++p) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(nodes);
        const Complex z = std::polar(r, theta);
        sum += std::norm(evaluate(g, z)) * poisson_integral(mu, z);
    }
    return sum / static_cast<double>(nodes);
}

double area_integral(const PowerSeries& g, const MeasureOnCircle& mu, int m, std::size_t radial_nodes,
                     std::size_t angular_nodes) {
    const auto rule = gauss_legendre_unit(radial_nodes);
    const std::size_t trig_nodes = 2 * degree_or_zero(g) + mu.density_degree() + 2;
    const std::size_t base = std::max(angular_nodes, trig_nodes);
    const bool atoms = !mu.atoms().empty();
    double total = 0.0;
    for (std::size_t i = 0; i < radial_nodes; ++i) {
        const double t = rule.nodes[i];
        const double r = std::sqrt(t);
        std::size_t ring = base;
        if (atoms && r > 0.0) {
            // Aliased Poisson modes decay like r^N; push them below the target.
            const double needed = std::ceil(std::log(kAliasingTarget) / std::log(r));
            if (needed > static_cast<double>(ring)) {
                ring = static_cast<std::size_t>(std::min(needed, static_cast<double>(kMaxRingNodes))) +
                       degree_or_zero(g);
            }
        }
        total += rule.weights[i] * std::pow(1.0 - t, m - 1) * ring_average(g, mu, r, ring);
    }
    // dA = dt dtheta / (2 pi) after t = r^2.
    return total / (factorial(m) * factorial(m - 1));
}

} // namespace

std::string_view to_string(SeminormMethod method) {
    switch (method) {
    case SeminormMethod::closed_form_sigma:
        return "closed_form_sigma";
    case SeminormMethod::local_douglas:
        return "local_douglas";
    case SeminormMethod::measure_mixture:
        return "measure_mixture";
    case SeminormMethod::area_quadrature:
        return "area_quadrature";
    }
    return "unknown";
}

std::string to_json(const SeminormReport& report) {
    nlohmann::ordered_json j;
    j["value"] = report.value;
    j["method"] = std::string(to_string(report.method));
    j["error_estimate"] = report.error_estimate;
    return j.dump();
}

double dirichlet_sigma(const PowerSeries& f, int m) {
    if (m < 0) {
        throw DomainError("dirichlet_sigma: order must be nonnegative");
    }
    double sum = 0.0;
    for (std::size_t k = static_cast<std::size_t>(m); k < f.size(); ++k) {
        sum += integer_binomial(static_cast<std::int64_t>(k), m) * std::norm(f[k]);
    }
    return sum;
}

double h2_norm_sq(const PowerSeries& f) {
    return dirichlet_sigma(f, 0);
}

double dirichlet_point(const PowerSeries& f, Complex lambda, int m) {
    if (m < 0) {
        throw DomainError("dirichlet_point: order must be nonnegative");
    }
    if (m == 0) {
        return std::norm(evaluate_on_circle(f, lambda));
    }
    return dirichlet_sigma(local_shift(f, lambda).quotient, m - 1);
}

SeminormReport dirichlet_measure(const PowerSeries& f, const MeasureOnCircle& mu, int m) {
    if (m < 0) {
        throw DomainError("dirichlet_measure: order must be nonnegative");
    }
    SeminormReport report{0.0, SeminormMethod::measure_mixture, 0.0};
    if (mu.is_zero()) {
        return report;
    }
    for (const auto& atom : mu.atoms()) {
        if (atom.mass != 0.0) {
            report.value += atom.mass * dirichlet_point(f, atom.point, m);
        }
    }
    if (mu.lebesgue_mass() != 0.0) {
        report.value += mu.lebesgue_mass() * dirichlet_sigma(f, m);
    }
    if (mu.has_density()) {
        report.value += density_part(f, mu, m);
    }
    return report;
}

double space_norm_sq(const PowerSeries& f, const MeasureOnCircle& mu, int m) {
    return h2_norm_sq(f) + dirichlet_measure(f, mu, m).value;
}

SeminormReport dirichlet_area_oracle(const PowerSeries& f, const MeasureOnCircle& mu, int m, int radial_nodes,
                                     int angular_nodes) {
    if (m < 1) {
        throw ConfigError("dirichlet_area_oracle: order must be >= 1");
    }
    if (radial_nodes < 8) {
        throw ConfigError("dirichlet_area_oracle: need at least 8 radial nodes");
    }
    const auto min_angular = 2 * degree_or_zero(f) + 2;
    if (angular_nodes < 0 || static_cast<std::size_t>(angular_nodes) < min_angular) {
        throw ConfigError("dirichlet_area_oracle: need at least " + std::to_string(min_angular) + " angular nodes");
    }
    const auto g = derivative(f, m);
    SeminormReport report{0.0, SeminormMethod::area_quadrature, 0.0};
    if (g.is_zero() || mu.is_zero()) {
        return report;
    }
    const auto fine = static_cast<std::size_t>(radial_nodes);
    const auto angular = static_cast<std::size_t>(angular_nodes);
    report.value = area_integral(g, mu, m, fine, angular);
    const double coarse = area_integral(g, mu, m, fine / 2, angular);
    report.error_estimate = std::abs(report.value - coarse);
    return report;
}

SeminormReport converged_area_oracle(const PowerSeries& f, const MeasureOnCircle& mu, int m, int radial_nodes,
                                     int angular_nodes, double tol, int node_cap) {
    const int angular = std::max(angular_nodes, static_cast<int>(2 * degree_or_zero(f) + 2));
    int nodes = std::max(radial_nodes, 8);
    auto report = dirichlet_area_oracle(f, mu, m, nodes, angular);
    while (!(report.error_estimate < tol * (1.0 + std::abs(report.value)))) {
        nodes *= 2;
        if (nodes > node_cap) {
            throw ConvergenceError("area oracle did not converge within " + std::to_string(node_cap) +
                                       " radial nodes",
                                   report.value);
        }
        report = dirichlet_area_oracle(f, mu, m, nodes, angular);
    }
    return report;
}

TelescopingCheck telescoping_check(const PowerSeries& f, const MeasureOnCircle& mu, int j, int m) {
    if (j < 0 || j > m - 1) {
        throw DomainError("telescoping_check: need 0 <= j <= m - 1");
    }
    TelescopingCheck check;
    const auto top = static_cast<std::int64_t>(degree_or_zero(f));
    for (std::int64_t k = 1; k <= top; ++k) {
        check.lhs += dirichlet_measure(backward_shift(f, k), mu, j).value;
    }
    check.rhs = dirichlet_measure(f, mu, j + 1).value;
    return check;
}

KernelSeries evaluation_kernel_series(int m, double rho) {
    if (m < 1 || !(rho >= 0.0 && rho < 1.0)) {
        throw DomainError("evaluation_kernel_series: need m >= 1 and 0 <= rho < 1");
    }
    KernelSeries series;
    if (rho == 0.0) {
        return series;
    }
    const auto md = static_cast<double>(m);
    // Term at j = m: (m+1) * 0!/m! * rho^m.
    double term = (md + 1.0) / factorial(m) * std::pow(rho, md);
    for (int j = m; j < 1'000'000; ++j) {
        series.partial_sum += term;
        const auto jd = static_cast<double>(j);
        term *= (jd + 2.0) / (jd + 1.0) * (jd + 1.0 - md) / (jd + 1.0) * rho;
        // Successive ratios are <= rho, so the remainder is <= term / (1 - rho).
        const double tail = term / (1.0 - rho);
        if (tail <= 1e-17 * series.partial_sum) {
            series.tail_bound = tail;
            return series;
        }
    }
    series.tail_bound = term / (1.0 - rho);
    return series;
}

EvaluationBound evaluation_bound(const PowerSeries& f, const MeasureOnCircle& mu, int m, Complex w) {
    if (m < 1) {
        throw DomainError("evaluation_bound: order must be >= 1");
    }
    for (int k = 0; k < m; ++k) {
        if (f[static_cast<std::size_t>(k)] != Complex{}) {
            throw DomainError("evaluation_bound: f must vanish to order m at 0");
        }
    }
    const double mass = total_mass(mu);
    if (!(mass > 0.0)) {
        throw DomainError("evaluation_bound: measure must have positive mass");
    }
    const auto kernel = evaluation_kernel_series(m, std::norm(w));
    EvaluationBound bound;
    bound.lhs = std::norm(evaluate(f, w));
    bound.rhs = 4.0 * factorial(m - 1) / mass * kernel.partial_sum * dirichlet_measure(f, mu, m).value;
    return bound;
}

} // namespace cesaro
