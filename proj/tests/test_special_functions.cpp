#include <cmath>

#include <doctest.h>

#include "shellmin/special_functions.hpp"

using namespace shellmin;

TEST_CASE("gamma matches reference values") {
    CHECK(shellmin::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(shellmin::gamma(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(shellmin::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(shellmin::gamma(7.5) == doctest::Approx(1871.2543057977883).epsilon(1e-12));
    // Reflection branch: Gamma(-3/2) = 4 sqrt(pi) / 3.
    CHECK(shellmin::gamma(-1.5) == doctest::Approx(2.3632718012073547).epsilon(1e-12));
}

TEST_CASE("gamma rejects nonpositive integers") {
    CHECK_THROWS_AS(shellmin::gamma(0.0), singularity_error);
    CHECK_THROWS_AS(shellmin::gamma(-3.0), singularity_error);
}

TEST_CASE("unit sphere areas") {
    CHECK(unit_sphere_area(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
    CHECK_THROWS_AS(unit_sphere_area(0), std::invalid_argument);
}

TEST_CASE("fourier constant sign and value") {
    // 2^{3+1/2} Gamma(2) / Gamma(-3/2)
    CHECK(fourier_constant(3.0, 1) == doctest::Approx(4.7873073648171921).epsilon(1e-10));
    CHECK(fourier_constant(2.5, 1) > 0.0);
    CHECK(fourier_constant(3.5, 2) > 0.0);
    CHECK(fourier_constant(1.0, 1) < 0.0);
    CHECK(fourier_constant(0.5, 3) < 0.0);
    CHECK_THROWS(fourier_constant(2.0, 1));
    CHECK_THROWS(fourier_constant(4.5, 1));
}

TEST_CASE("closed-form shell radius at quartic-quadratic exponents") {
    for (int n = 1; n <= 8; ++n) {
        const KernelParams p(4.0, 2.0, n);
        const double expected = std::sqrt(n / (2.0 * n + 2.0));
        CHECK(shell_radius_closed_form(p) == doctest::Approx(expected).epsilon(1e-13));
    }
    // alpha = 3, beta = 2, n = 2 collapses to 3 pi / 16.
    CHECK(shell_radius_closed_form(KernelParams(3.0, 2.0, 2)) ==
          doctest::Approx(3.0 * M_PI / 16.0).epsilon(1e-13));
}

TEST_CASE("stability threshold in low dimensions") {
    // n = 2 reduces to alpha / (alpha - 1), n = 3 to 2 / alpha.
    CHECK(shell_stability_threshold(4.0, 2) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
    CHECK(shell_stability_threshold(3.0, 2) == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(shell_stability_threshold(4.0, 3) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("kernel zero and its uniform cap") {
    const DiameterBound b = diameter_bound(KernelParams(4.0, 2.0, 2));
    CHECK(b.zero == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(b.limit == doctest::Approx(std::exp(0.5)).epsilon(1e-14));
    CHECK(b.zero < b.limit);
    const DiameterBound c = diameter_bound(KernelParams(2.1, 2.0, 3));
    CHECK(c.zero < c.limit);
    CHECK(c.zero > 1.0);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(KernelParams(2.0, 3.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(KernelParams(2.0, 2.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(KernelParams(4.0, 2.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(KernelParams(4.0, -3.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(KernelParams(4.0, 0.0, 2), std::invalid_argument);
}
