#include <cmath>
#include <limits>

#include <doctest.h>

#include "shellmin/quadrature.hpp"

using namespace shellmin;

TEST_CASE("smooth integrands") {
    auto cubic = [](double x) { return x * x * x; };
    CHECK(integrate_tanh_sinh(cubic, 0.0, 1.0) == doctest::Approx(0.25).epsilon(1e-12));
    auto sine = [](double x) { return std::sin(x); };
    CHECK(integrate_tanh_sinh(sine, 0.0, M_PI) == doctest::Approx(2.0).epsilon(1e-12));
    auto gauss = [](double x) { return std::exp(-x * x); };
    CHECK(integrate_tanh_sinh(gauss, -4.0, 4.0) ==
          doctest::Approx(1.7724538235791379).epsilon(1e-11)); // erf(4) * sqrt(pi)
}

TEST_CASE("endpoint algebraic singularity") {
    auto invsqrt = [](double x) { return 1.0 / std::sqrt(x); };
    CHECK(integrate_tanh_sinh(invsqrt, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-11));
    // A singularity at a nonzero endpoint is resolvable only to one ulp of
    // that endpoint, which truncates ~sqrt(ulp) of mass for this integrand.
    auto both_ends = [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); };
    CHECK(integrate_tanh_sinh(both_ends, 0.0, 1.0) == doctest::Approx(M_PI).epsilon(1e-7));
}

TEST_CASE("failure modes raise quadrature errors") {
    auto divergent = [](double x) { return 1.0 / x; };
    CHECK_THROWS_AS(integrate_tanh_sinh(divergent, 0.0, 1.0), quadrature_error);
    auto poisoned = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_AS(integrate_tanh_sinh(poisoned, 0.0, 1.0), quadrature_error);
}

TEST_CASE("fixed-panel rule on oscillatory integrands") {
    auto sine = [](double x) { return std::sin(x); };
    CHECK(integrate_gauss_panels(sine, 0.0, 2.0 * M_PI, 8) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
    auto sine_sq = [](double x) { return std::sin(x) * std::sin(x); };
    CHECK(integrate_gauss_panels(sine_sq, 0.0, 2.0 * M_PI, 8) ==
          doctest::Approx(M_PI).epsilon(1e-13));
    auto fast = [](double x) { return std::cos(40.0 * x); };
    CHECK(integrate_gauss_panels(fast, 0.0, 1.0, 64) ==
          doctest::Approx(std::sin(40.0) / 40.0).epsilon(1e-12));
}
