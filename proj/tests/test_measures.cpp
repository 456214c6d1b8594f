#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cesaro/errors.hpp"
#include "cesaro/measures.hpp"
#include "cesaro/random.hpp"

#include <cmath>
#include <numbers>

using namespace cesaro;
using doctest::Approx;

TEST_CASE("total mass") {
    CHECK(total_mass(MeasureOnCircle::dirac(1.0)) == 1.0);
    CHECK(total_mass(MeasureOnCircle::lebesgue()) == 1.0);
    CHECK(total_mass(MeasureOnCircle::dirac(1.0) + 2.0 * MeasureOnCircle::lebesgue()) == 3.0);
    CHECK(total_mass(MeasureOnCircle::zero()) == 0.0);
    // Density mass is d_0.
    CHECK(total_mass(MeasureOnCircle({}, 0.0, {2.0, Complex(0.5, 0.5)})) == Approx(2.0));
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(MeasureOnCircle::dirac(0.5), DomainError);
    CHECK_THROWS_AS(MeasureOnCircle::dirac(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(MeasureOnCircle::lebesgue(-0.1), DomainError);
    CHECK_THROWS_AS(MeasureOnCircle({}, 0.0, {Complex(1.0, 0.1)}), DomainError);
    CHECK_THROWS_AS(MeasureOnCircle({}, 0.0, {1.0, 2.0}), DomainError);  // 1 + 4 cos theta < 0 somewhere
    CHECK_THROWS_AS(-1.0 * MeasureOnCircle::lebesgue(), DomainError);
    CHECK(MeasureOnCircle::zero().is_zero());
}

TEST_CASE("Poisson integral") {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        const Complex z = std::polar(std::sqrt(rng.uniform()) * 0.99, rng.uniform(0.0, 6.28));
        CHECK(poisson_integral(MeasureOnCircle::lebesgue(), z) == Approx(1.0).epsilon(1e-15));
    }
    CHECK(poisson_integral(MeasureOnCircle::dirac(1.0), 0.0) == Approx(1.0));
    CHECK(poisson_integral(MeasureOnCircle::dirac(1.0), 0.5) == Approx(3.0).epsilon(1e-15));
    CHECK_THROWS_AS(poisson_integral(MeasureOnCircle::lebesgue(), 1.0), DomainError);

    // Density part: harmonic extension of d0 + 2 Re(d1 e^{i theta}) is d0 + 2 Re(d1 z).
    const MeasureOnCircle w({}, 0.0, {1.0, Complex(0.2, -0.1)});
    const Complex z(0.3, -0.4);
    CHECK(poisson_integral(w, z) == Approx(1.0 + 2.0 * (Complex(0.2, -0.1) * z).real()).epsilon(1e-14));

    const Complex lambda = std::polar(1.0, 1.1);
    const Complex p(0.6, 0.2);
    CHECK(poisson_integral(MeasureOnCircle::dirac(lambda, 2.0), p) ==
          Approx(2.0 * (1.0 - std::norm(p)) / std::norm(p - lambda)).epsilon(1e-14));
}

TEST_CASE("density values") {
    const MeasureOnCircle w({}, 0.0, {1.0, Complex(0.25, 0.0)});
    CHECK(w.density_at(0.0) == Approx(1.5));
    CHECK(w.density_at(std::numbers::pi) == Approx(0.5));
    CHECK(w.density_degree() == 1);
}

TEST_CASE("measure grammar") {
    CHECK(parse_measure("sigma").lebesgue_mass() == 1.0);
    CHECK(parse_measure("zero").is_zero());
    const auto d = parse_measure("delta:90");
    REQUIRE(d.atoms().size() == 1);
    CHECK(std::abs(d.atoms()[0].point - Complex(0.0, 1.0)) < 1e-15);
    const auto mix = parse_measure("mix:0.3*delta:0+0.7*sigma");
    CHECK(total_mass(mix) == Approx(1.0));
    REQUIRE(mix.atoms().size() == 1);
    CHECK(mix.atoms()[0].mass == Approx(0.3));
    CHECK(mix.lebesgue_mass() == Approx(0.7));
    const auto dens = parse_measure("density:[1,0.25,0]");
    CHECK(dens.density_at(0.0) == Approx(1.5));
    CHECK(total_mass(parse_measure("2*sigma")) == 2.0);
    CHECK(total_mass(parse_measure("mix:1e-1*sigma+delta:180")) == Approx(1.1));

    for (const char* bad : {"", "sigm", "delta:", "delta:x", "density:[1,2]", "density:[1", "mix:", "-1*sigma",
                            "mix:sigma+", "density:[1,5,0]"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_measure(bad), ConfigError);
    }
}
