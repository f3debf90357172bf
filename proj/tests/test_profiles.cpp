#include <doctest.h>

#include "xva/profiles.hpp"
#include "xva/quadrature.hpp"

using namespace xva;

TEST_CASE("triangle and flat evaluation") {
    CHECK(ExposureProfile::decreasing(1.0, 30.0).value(0.0) == 1.0);
    CHECK(ExposureProfile::decreasing(1.0, 30.0).value(30.0) == 0.0);
    CHECK(ExposureProfile::increasing(1.0, 30.0).value(30.0) == 1.0);
    CHECK(ExposureProfile::increasing(1.0, 30.0).value(0.0) == 0.0);
    CHECK(ExposureProfile::flat(2.5, 10.0).value(7.0) == 2.5);

    // zero beyond maturity, error below zero
    CHECK(ExposureProfile::flat(2.5, 10.0).value(10.5) == 0.0);
    CHECK_THROWS_AS(ExposureProfile::flat(2.5, 10.0).value(-0.1), std::domain_error);
}

TEST_CASE("piecewise linear") {
    auto p = ExposureProfile::piecewise({{0.0, 1.0}, {10.0, 3.0}, {20.0, 0.0}});
    CHECK(p.value(0.0) == 1.0);
    CHECK(p.value(5.0) == doctest::Approx(2.0));
    CHECK(p.value(15.0) == doctest::Approx(1.5));
    CHECK(p.value(25.0) == 0.0);
    CHECK(p.maturity() == 20.0);

    CHECK_THROWS_AS(ExposureProfile::piecewise({{0.0, 1.0}}), std::domain_error);
    CHECK_THROWS_AS(ExposureProfile::piecewise({{0.0, 1.0}, {0.0, 2.0}}), std::domain_error);
    CHECK_THROWS_AS(ExposureProfile::piecewise({{0.0, 1.0}, {5.0, -2.0}}), std::domain_error);
}

TEST_CASE("triangles average to the flat profile") {
    const double scale = 3.7, T = 23.0;
    auto dec = ExposureProfile::decreasing(scale, T);
    auto inc = ExposureProfile::increasing(scale, T);
    auto flat = ExposureProfile::flat(scale, T);
    const double sum = integrate([&](double t) { return dec.value(t); }, T) +
                       integrate([&](double t) { return inc.value(t); }, T);
    const double ref = integrate([&](double t) { return flat.value(t); }, T);
    CHECK(sum == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("invalid construction") {
    CHECK_THROWS_AS(ExposureProfile::flat(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(ExposureProfile::flat(-1.0, 10.0), std::domain_error);
}
