#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "shellmin/equilibria.hpp"

using namespace shellmin;

TEST_CASE("surface constants") {
    // Int (1 - y1) dsigma = 1 in every dimension.
    CHECK(c_alpha_constant(2.0, 2) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(c_alpha_constant(2.0, 3) == doctest::Approx(1.0).epsilon(1e-10));
    // Int |e1-y|^2 (1 - y1) dsigma = 2 Int (1-y1)^2 = 2(1 + 1/n).
    CHECK(c_alpha_constant(4.0, 2) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(c_alpha_constant(4.0, 3) == doctest::Approx(8.0 / 3.0).epsilon(1e-10));
    CHECK(c_alpha_constant(3.0, 2) == doctest::Approx(16.0 / (3.0 * M_PI)).epsilon(1e-10));
}

TEST_CASE("shell radius from force balance matches the closed form") {
    for (double alpha : {2.5, 3.0, 3.5, 4.0}) {
        for (int n : {2, 3}) {
            const KernelParams p(alpha, 2.0, n);
            CHECK(shell_radius_rootfind(p) ==
                  doctest::Approx(shell_radius_closed_form(p)).epsilon(1e-9));
        }
    }
    // In 1D the two balancing atoms sit at distance 1 regardless of exponents.
    CHECK(shell_radius_rootfind(KernelParams(4.0, 2.0, 1)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(shell_radius_rootfind(KernelParams(3.0, 1.5, 1)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("derivative-based shell radius and its inconsistent variant") {
    const ShellRadiusSolution sol = steady_shell_radius(KernelParams(4.0, 2.0, 2));
    const double expected = 1.0 / std::sqrt(3.0);
    CHECK(sol.root == doctest::Approx(expected).epsilon(1e-10));
    CHECK(sol.closed_form == doctest::Approx(sol.root).epsilon(1e-9));
    // The variant divides the quadratic term differently and lands at 1/sqrt(2).
    CHECK(sol.closed_form_variant == doctest::Approx(M_SQRT1_2).epsilon(1e-9));
    CHECK(std::abs(sol.closed_form_variant - sol.root) > 0.1);
    CHECK_THROWS_AS(steady_shell_radius(KernelParams(3.0, 1.5, 2)), std::invalid_argument);
}

TEST_CASE("steady rings under the quartic-quadratic kernel") {
    const KernelParams p(4.0, 2.0, 2);
    const double expected = 1.0 / std::sqrt(3.0);
    for (int k : {3, 5, 8}) {
        CHECK(ring_steady_radius(k, p) == doctest::Approx(expected).epsilon(1e-10));
    }
    // Large rings approach the continuum shell radius.
    CHECK(ring_steady_radius(32, KernelParams(3.0, 2.0, 2)) ==
          doctest::Approx(3.0 * M_PI / 16.0).epsilon(0.02));
    CHECK_THROWS_AS(ring_steady_radius(2, p), std::invalid_argument);
}

TEST_CASE("regular simplex geometry") {
    for (int n : {2, 3, 5}) {
        const DiscreteMeasure m = simplex_measure(n);
        CHECK(m.size() == n + 1);
        CHECK(center_of_mass(m).norm() < 1e-12);
        for (Index i = 0; i < m.size(); ++i) {
            CHECK(m.point(i).norm() ==
                  doctest::Approx(std::sqrt(n / (2.0 * n + 2.0))).epsilon(1e-12));
            for (Index j = i + 1; j < m.size(); ++j)
                CHECK((m.point(i) - m.point(j)).norm() == doctest::Approx(1.0).epsilon(1e-12));
        }
        const Mat mom = second_moment_matrix(m);
        const Mat target = Mat::Identity(n, n) / (2.0 * n + 2.0);
        CHECK((mom - target).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("moment-matched configurations share the quartic energy") {
    // Simplex, cross-polytope, and rings with the same first, second, and
    // fourth radial moments have equal energy under a = 4, b = 2.
    for (int n : {2, 3}) {
        const double R = std::sqrt(n / (2.0 * n + 2.0));
        const double expected = -n / (8.0 * (n + 1.0));
        const Kernel k(4.0, 2.0, n);
        CHECK(interaction_energy(k, simplex_measure(n)) ==
              doctest::Approx(expected).epsilon(1e-13));
        CHECK(interaction_energy(k, cross_polytope_measure(n, R)) ==
              doctest::Approx(expected).epsilon(1e-13));
    }
    const Kernel k2(4.0, 2.0, 2);
    const double R2 = 1.0 / std::sqrt(3.0);
    CHECK(interaction_energy(k2, ring_measure(3, R2)) ==
          doctest::Approx(-1.0 / 12.0).epsilon(1e-13));
    CHECK(interaction_energy(k2, ring_measure(8, R2)) ==
          doctest::Approx(-1.0 / 12.0).epsilon(1e-13));
}

TEST_CASE("shell proxies") {
    const DiscreteMeasure flat = shell_proxy(0.8, 1, 6);
    CHECK(flat.size() == 6);
    for (Index i = 0; i < flat.size(); ++i)
        CHECK(std::abs(std::abs(flat.point(i)(0)) - 0.8) < 1e-14);
    CHECK(center_of_mass(flat).norm() < 1e-14);

    const DiscreteMeasure sphere = shell_proxy(1.3, 3, 200);
    CHECK(sphere.size() == 200);
    for (Index i = 0; i < sphere.size(); ++i)
        CHECK(sphere.point(i).norm() == doctest::Approx(1.3).epsilon(1e-12));

    CHECK_THROWS_AS(shell_proxy(1.0, 4, 10), std::invalid_argument);
}

TEST_CASE("stationarity diagnostics") {
    const KernelParams p(3.0, 2.0, 2);
    const double r = ring_steady_radius(8, p);
    const StationarityReport rep = euler_lagrange_residual(Kernel(p), ring_measure(8, r));
    CHECK(rep.grad_max < 1e-9);
    CHECK(rep.value_spread < 1e-12);

    // Two half masses at distance 1 are exactly steady on the line and the
    // potential dips nowhere below its value on the support.
    Mat pts(1, 2);
    pts << -0.5, 0.5;
    const StationarityReport line =
        euler_lagrange_residual(Kernel(3.5, 2.0, 1), DiscreteMeasure(std::move(pts)));
    CHECK(line.grad_max < 1e-12);
    CHECK(line.value_spread < 1e-14);
    CHECK(line.exterior_min_gap >= 0.0);
}
