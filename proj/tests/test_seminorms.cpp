#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cesaro/errors.hpp"
#include "cesaro/random.hpp"
#include "cesaro/seminorms.hpp"
#include "cesaro/specfun.hpp"

#include <json.hpp>

#include <cmath>

using namespace cesaro;
using doctest::Approx;

namespace {

MeasureOnCircle family(int pick, Rng& rng) {
    switch (pick) {
    case 0:
        return MeasureOnCircle::lebesgue();
    case 1:
        return MeasureOnCircle::dirac(rng.unit_circle());
    case 2:
        return 0.3 * MeasureOnCircle::dirac(1.0) + 0.7 * MeasureOnCircle::lebesgue();
    default:
        return MeasureOnCircle({{Complex(0.0, 1.0), 0.5}}, 0.2, {1.0, Complex(0.2, 0.1), Complex(-0.1, 0.05)});
    }
}

} // namespace

TEST_CASE("closed form on sigma") {
    CHECK(dirichlet_sigma(PowerSeries::monomial(2), 1) == 2.0);
    CHECK(dirichlet_sigma(PowerSeries({1.0, 1.0}), 2) == 0.0);
    CHECK(dirichlet_sigma(PowerSeries({1.0, 1.0, 1.0, 1.0}), 2) == 4.0);
    for (int k = 0; k <= 30; ++k) {
        for (int m = 0; m <= 6; ++m) {
            CHECK(dirichlet_sigma(PowerSeries::monomial(k), m) == integer_binomial(k, m));
        }
    }
    CHECK(h2_norm_sq(PowerSeries({1.0, 1.0})) == 2.0);
    CHECK(h2_norm_sq(PowerSeries()) == 0.0);
    CHECK(h2_norm_sq(PowerSeries::monomial(5, 3.0)) == 9.0);
}

TEST_CASE("local Dirichlet integral") {
    CHECK(dirichlet_point(PowerSeries::monomial(2), 1.0, 1) == Approx(2.0));
    CHECK(dirichlet_point(PowerSeries::monomial(3), 1.0, 1) == Approx(3.0));
    CHECK(dirichlet_point(PowerSeries::constant(4.0), Complex(0.0, 1.0), 3) == 0.0);
    for (int n = 1; n <= 10; ++n) {
        CHECK(dirichlet_point(PowerSeries::monomial(n), 1.0, 1) == Approx(n).epsilon(1e-14));
    }
    // Order 0 is the squared boundary value.
    CHECK(dirichlet_point(PowerSeries({1.0, -1.0}), -1.0, 0) == Approx(4.0));
    // Rotation invariance: D_{lambda,m}(f) = D_{1,m}(f(lambda z)).
    Rng rng(21);
    for (int i = 0; i < 20; ++i) {
        const auto f = rng.series(static_cast<std::size_t>(rng.integer(1, 20)));
        const auto lambda = rng.unit_circle();
        const int m = static_cast<int>(rng.integer(1, 3));
        CHECK(dirichlet_point(f, lambda, m) == Approx(dirichlet_point(rotate(f, lambda), 1.0, m)).epsilon(1e-10));
    }
}

TEST_CASE("measure disintegration") {
    Rng rng(8);
    const auto f = rng.series(12);
    for (int m = 1; m <= 3; ++m) {
        CHECK(dirichlet_measure(f, MeasureOnCircle::dirac(1.0), m).value == Approx(dirichlet_point(f, 1.0, m)));
        CHECK(dirichlet_measure(f, MeasureOnCircle::lebesgue(), m).value == Approx(dirichlet_sigma(f, m)));
        CHECK(dirichlet_measure(f, MeasureOnCircle::zero(), m).value == 0.0);
    }
    CHECK(dirichlet_measure(PowerSeries::monomial(2), MeasureOnCircle::dirac(1.0) + MeasureOnCircle::lebesgue(), 1)
              .value == Approx(4.0));
    // A constant density w = d0 acts like d0 * sigma.
    const MeasureOnCircle flat({}, 0.0, {2.5});
    CHECK(dirichlet_measure(f, flat, 2).value == Approx(2.5 * dirichlet_sigma(f, 2)).epsilon(1e-12));
    const auto report = dirichlet_measure(f, MeasureOnCircle::lebesgue(), 1);
    const auto parsed = nlohmann::json::parse(to_json(report));
    CHECK(parsed["value"].get<double>() == report.value);
    CHECK(parsed["method"].get<std::string>() == std::string(to_string(report.method)));
    CHECK(space_norm_sq(f, MeasureOnCircle::lebesgue(), 1) == Approx(h2_norm_sq(f) + dirichlet_sigma(f, 1)));
}

TEST_CASE("area oracle anchors") {
    const auto s = dirichlet_area_oracle(PowerSeries::monomial(2), MeasureOnCircle::lebesgue(), 1, 64, 32);
    CHECK(s.value == Approx(2.0).epsilon(1e-8));
    CHECK(s.method == SeminormMethod::area_quadrature);
    const auto d = dirichlet_area_oracle(PowerSeries::monomial(2), MeasureOnCircle::dirac(1.0), 2, 128, 32);
    CHECK(std::abs(d.value - 1.0) <= 1e-6);
    CHECK(dirichlet_area_oracle(PowerSeries::constant(3.0), MeasureOnCircle::dirac(1.0), 1, 16, 8).value == 0.0);
    for (int n = 1; n <= 10; ++n) {
        const auto r = converged_area_oracle(PowerSeries::monomial(n), MeasureOnCircle::dirac(1.0), 1);
        CHECK(std::abs(r.value - n) <= 1e-6 * (1.0 + n));
    }
    CHECK_THROWS_AS(dirichlet_area_oracle(PowerSeries::monomial(2), MeasureOnCircle::lebesgue(), 0, 64, 32),
                    ConfigError);
    CHECK_THROWS_AS(dirichlet_area_oracle(PowerSeries::monomial(2), MeasureOnCircle::lebesgue(), 1, 4, 32),
                    ConfigError);
    CHECK_THROWS_AS(dirichlet_area_oracle(PowerSeries::monomial(5), MeasureOnCircle::lebesgue(), 1, 64, 4),
                    ConfigError);
}

TEST_CASE("area oracle matches disintegration on random inputs") {
    Rng rng(99);
    for (int i = 0; i < 30; ++i) {
        const auto f = rng.series(static_cast<std::size_t>(rng.integer(0, 10)));
        const int m = static_cast<int>(rng.integer(1, 3));
        const auto mu = family(static_cast<int>(rng.integer(0, 3)), rng);
        const double exact = dirichlet_measure(f, mu, m).value;
        const double oracle = converged_area_oracle(f, mu, m).value;
        CHECK(std::abs(oracle - exact) <= 1e-6 * (1.0 + exact));
    }
}

TEST_CASE("oracle cap raises ConvergenceError") {
    // A single radial doubling cannot meet a zero-width tolerance.
    CHECK_THROWS_AS(converged_area_oracle(PowerSeries({0.3, 1.0, -2.0, 0.5}), MeasureOnCircle::dirac(1.0), 2, 16, 0,
                                          1e-300, 32),
                    ConvergenceError);
}

TEST_CASE("telescoping identity") {
    const auto t = telescoping_check(PowerSeries::monomial(2), MeasureOnCircle::lebesgue(), 0, 1);
    CHECK(t.lhs == Approx(2.0));
    CHECK(t.rhs == Approx(2.0));
    const auto c = telescoping_check(PowerSeries::constant(1.0), MeasureOnCircle::dirac(1.0), 0, 1);
    CHECK(c.lhs == 0.0);
    CHECK(c.rhs == 0.0);
    const auto z3 = telescoping_check(PowerSeries::monomial(3), MeasureOnCircle::dirac(1.0), 0, 1);
    CHECK(z3.lhs == Approx(3.0));
    CHECK(z3.rhs == Approx(3.0));
    Rng rng(4);
    for (int i = 0; i < 60; ++i) {
        const auto f = rng.series(static_cast<std::size_t>(rng.integer(0, 40)));
        const auto mu = family(static_cast<int>(rng.integer(0, 3)), rng);
        const int j = static_cast<int>(rng.integer(0, 3));
        const auto r = telescoping_check(f, mu, j, j + 1);
        CHECK(r.lhs == Approx(r.rhs).epsilon(1e-9));
    }
    CHECK_THROWS_AS(telescoping_check(PowerSeries::monomial(2), MeasureOnCircle::lebesgue(), 1, 1), DomainError);
}

TEST_CASE("evaluation bound") {
    const auto k = evaluation_kernel_series(1, 0.25);
    // m = 1: sum_{j>=1} (j+1)/j rho^j = rho/(1-rho) - ln(1-rho).
    CHECK(k.partial_sum == Approx(0.25 / 0.75 - std::log(0.75)).epsilon(1e-14));
    CHECK(k.tail_bound <= 1e-15 * k.partial_sum);

    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        const int m = static_cast<int>(rng.integer(1, 3));
        std::vector<Complex> c(static_cast<std::size_t>(rng.integer(m, m + 15)) + 1);
        for (std::size_t q = static_cast<std::size_t>(m); q < c.size(); ++q) {
            c[q] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        }
        const Complex w = std::polar(0.9 * std::sqrt(rng.uniform()), rng.uniform(0.0, 6.28));
        const auto mu = rng.integer(0, 1) == 0 ? MeasureOnCircle::lebesgue() : MeasureOnCircle::dirac(1.0);
        const auto b = evaluation_bound(PowerSeries(c), mu, m, w);
        CHECK(b.lhs <= b.rhs);
    }
    CHECK_THROWS_AS(evaluation_bound(PowerSeries({1.0, 1.0}), MeasureOnCircle::lebesgue(), 1, 0.5), DomainError);
    CHECK_THROWS_AS(evaluation_bound(PowerSeries::monomial(2), MeasureOnCircle::zero(), 1, 0.5), DomainError);
    CHECK_THROWS_AS(evaluation_bound(PowerSeries::monomial(2), MeasureOnCircle::lebesgue(), 1, 1.0), DomainError);
}
