#include <string>

#include <doctest.h>

#include "shellmin/measure.hpp"

using namespace shellmin;

namespace {

DiscreteMeasure pair_measure(double a, double b) {
    Mat pts(1, 2);
    pts << a, b;
    return DiscreteMeasure(std::move(pts));
}

} // namespace

TEST_CASE("construction validates weights") {
    Mat pts(2, 3);
    pts << 0, 1, 2, 0, 0, 0;
    Vec good(3);
    good << 0.25, 0.25, 0.5;
    CHECK_NOTHROW(DiscreteMeasure(pts, good));

    Vec off(3);
    off << 0.3, 0.3, 0.3; // sums to 0.9: rejected, not rescaled
    CHECK_THROWS_AS(DiscreteMeasure(pts, off), std::invalid_argument);

    Vec negative(3);
    negative << 1.2, -0.1, -0.1;
    CHECK_THROWS_AS(DiscreteMeasure(pts, negative), std::invalid_argument);

    Vec short_vec(2);
    short_vec << 0.5, 0.5;
    CHECK_THROWS_AS(DiscreteMeasure(pts, short_vec), std::invalid_argument);
}

TEST_CASE("uniform detection") {
    Mat pts(1, 4);
    pts << 0, 1, 2, 3;
    CHECK(DiscreteMeasure(pts).uniform());
    Vec w(4);
    w << 0.4, 0.2, 0.2, 0.2;
    CHECK_FALSE(DiscreteMeasure(pts, w).uniform());
}

TEST_CASE("center of mass, centering, translation") {
    const DiscreteMeasure m = pair_measure(0.0, 1.0);
    CHECK(center_of_mass(m)(0) == doctest::Approx(0.5).epsilon(1e-15));

    const DiscreteMeasure c = centered(m);
    CHECK(c.point(0)(0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(c.point(1)(0) == doctest::Approx(0.5).epsilon(1e-15));

    Vec shift(1);
    shift << 3.0;
    const DiscreteMeasure t = translated(m, shift);
    CHECK(center_of_mass(t)(0) == doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("second moments and diameter") {
    Mat pts(2, 2);
    pts << -0.7, 0.7, 0.0, 0.0;
    const DiscreteMeasure m{pts};
    const Mat mom = second_moment_matrix(m);
    CHECK(mom(0, 0) == doctest::Approx(0.49).epsilon(1e-15));
    CHECK(mom(1, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(mom(0, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(support_diameter(m) == doctest::Approx(1.4).epsilon(1e-15));
}

TEST_CASE("json round trip") {
    Mat pts(2, 3);
    pts << 0.125, -1.5, 2.25, 0.5, 0.0, -0.75;
    Vec w(3);
    w << 0.5, 0.25, 0.25;
    const DiscreteMeasure m(pts, w);
    const DiscreteMeasure back = measure_from_json(to_json(m));
    CHECK(back.dim() == 2);
    CHECK(back.size() == 3);
    CHECK((back.points() - m.points()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.weights() - m.weights()).cwiseAbs().maxCoeff() == 0.0);

    // Uniform weights are omitted from the serialized form.
    const std::string u = to_json(DiscreteMeasure(pts));
    CHECK(u.find("weights") == std::string::npos);
    CHECK(measure_from_json(u).uniform());
}
