#include <cmath>

#include <doctest.h>

#include "shellmin/equilibria.hpp"
#include "shellmin/rng.hpp"
#include "shellmin/transport.hpp"

using namespace shellmin;

namespace {

DiscreteMeasure random_cloud(std::uint64_t seed, int dim, int count) {
    Rng rng(seed);
    Mat pts(dim, count);
    for (Index i = 0; i < count; ++i) pts.col(i) = rng.point_in_ball(dim);
    return DiscreteMeasure(std::move(pts));
}

} // namespace

TEST_CASE("distance to self is zero") {
    const DiscreteMeasure m = random_cloud(3, 2, 12);
    CHECK(wasserstein_p(m, m, 1.0) == 0.0);
    CHECK(wasserstein_p(m, m, 2.0) == 0.0);
    CHECK(wasserstein_inf(m, m) == 0.0);
}

TEST_CASE("single atoms and rotated rings") {
    Mat a(1, 1), b(1, 1);
    a << 0.0;
    b << 1.0;
    const DiscreteMeasure ma{a}, mb{b};
    CHECK(wasserstein_p(ma, mb, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(wasserstein_p(ma, mb, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(wasserstein_inf(ma, mb) == doctest::Approx(1.0).epsilon(1e-15));

    // Square ring vs itself rotated by pi/4: every atom travels 2 sin(pi/8).
    const DiscreteMeasure square = ring_measure(4, 1.0);
    Mat rotated(2, 4);
    for (Index i = 0; i < 4; ++i) {
        const double t = M_PI / 4.0;
        const Vec x = square.point(i);
        rotated(0, i) = std::cos(t) * x(0) - std::sin(t) * x(1);
        rotated(1, i) = std::sin(t) * x(0) + std::cos(t) * x(1);
    }
    const DiscreteMeasure diamond{rotated};
    const double hop = 2.0 * std::sin(M_PI / 8.0);
    CHECK(wasserstein_p(square, diamond, 2.0) == doctest::Approx(hop).epsilon(1e-12));
    CHECK(wasserstein_inf(square, diamond) == doctest::Approx(hop).epsilon(1e-12));
}

TEST_CASE("bottleneck distance between concentric rings") {
    CHECK(wasserstein_inf(ring_measure(8, 1.0), ring_measure(8, 1.1)) ==
          doctest::Approx(0.1).epsilon(1e-12));
    // Unequal cardinality: the octagon splits its diagonal atoms between
    // square corners, so the bottleneck is the diagonal-to-corner hop.
    CHECK(wasserstein_inf(ring_measure(4, 1.0), ring_measure(8, 1.0)) ==
          doctest::Approx(2.0 * std::sin(M_PI / 8.0)).epsilon(1e-12));
}

TEST_CASE("metric axioms on random clouds") {
    const DiscreteMeasure a = random_cloud(10, 2, 9);
    const DiscreteMeasure b = random_cloud(11, 2, 9);
    const DiscreteMeasure c = random_cloud(12, 2, 9);
    for (double p : {1.0, 2.0}) {
        const double ab = wasserstein_p(a, b, p);
        const double bc = wasserstein_p(b, c, p);
        const double ac = wasserstein_p(a, c, p);
        CHECK(ab == doctest::Approx(wasserstein_p(b, a, p)).epsilon(1e-12));
        CHECK(ac <= ab + bc + 1e-12);
        CHECK(ab > 0.0);
    }
    // Costs are nondecreasing in p for probability couplings.
    const double d1 = wasserstein_p(a, b, 1.0);
    const double d2 = wasserstein_p(a, b, 2.0);
    const double d4 = wasserstein_p(a, b, 4.0);
    const double di = wasserstein_inf(a, b);
    CHECK(d1 <= d2 + 1e-12);
    CHECK(d2 <= d4 + 1e-12);
    CHECK(d4 <= di + 1e-12);
}

TEST_CASE("sorting solves the line exactly") {
    for (int trial = 0; trial < 8; ++trial) {
        const int count = 2 + 3 * trial;
        const DiscreteMeasure a = random_cloud(100 + trial, 1, count);
        const DiscreteMeasure b = random_cloud(200 + trial, 1, count);
        const double p = 1.0 + trial % 3;
        CHECK(wasserstein_p(a, b, p) == detail::wasserstein_p_assignment(a, b, p));
    }
}

TEST_CASE("input validation") {
    const DiscreteMeasure a = random_cloud(1, 2, 4);
    const DiscreteMeasure b = random_cloud(2, 3, 4);
    CHECK_THROWS_AS(wasserstein_p(a, b, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(wasserstein_p(a, random_cloud(2, 2, 5), 2.0), std::invalid_argument);
    CHECK_THROWS_AS(wasserstein_p(a, random_cloud(2, 2, 4), 0.5), std::invalid_argument);

    Mat pts(1, 2);
    pts << 0.0, 1.0;
    Vec w(2);
    w << 0.3, 0.7;
    const DiscreteMeasure lopsided(pts, w);
    CHECK_THROWS_AS(wasserstein_p(lopsided, random_cloud(3, 1, 2), 1.0),
                    std::invalid_argument);
}

TEST_CASE("distance to the minimizing configuration") {
    const Kernel k(3.0, 2.0, 2);
    const DiscreteMeasure ringlike = shell_proxy(0.58, 2, 32);
    const double base = distance_to_minimizer(ringlike, k, 2.0);
    CHECK(base >= 0.0);
    CHECK(base < 0.1);

    Vec shift(2);
    shift << 50.0, -20.0;
    CHECK(distance_to_minimizer(translated(ringlike, shift), k, 2.0) ==
          doctest::Approx(base).epsilon(1e-9));

    // Quartic-plus attraction compares against replicated simplex vertices.
    const DiscreteMeasure cloud = random_cloud(42, 2, 30);
    CHECK(distance_to_minimizer(cloud, Kernel(4.5, 2.0, 2), 2.0) > 0.0);
    CHECK_THROWS_AS(distance_to_minimizer(cloud, Kernel(4.5, 1.5, 2), 2.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(distance_to_minimizer(random_cloud(5, 1, 8), Kernel(2.5, 2.0, 1), 2.0),
                    std::invalid_argument);
}
