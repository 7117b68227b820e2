#include <cmath>

#include <doctest.h>

#include "shellmin/convexity.hpp"
#include "shellmin/rng.hpp"

using namespace shellmin;

namespace {

// Reference zero-mass, zero-mean signed measure on the line:
//   (1/2)(delta_{-1} + delta_{1}) - (1/2)(delta_{-1/2} + delta_{1/2}).
NeutralMeasure line_witness() {
    Mat pts(1, 4);
    pts << -1.0, 1.0, -0.5, 0.5;
    Vec w(4);
    w << 0.5, 0.5, -0.5, -0.5;
    return NeutralMeasure(std::move(pts), std::move(w));
}

DiscreteMeasure centered_cloud(std::uint64_t seed, int dim, int count) {
    Rng rng(seed);
    Mat pts(dim, count);
    for (Index i = 0; i < count; ++i) pts.col(i) = rng.point_in_ball(dim);
    pts.colwise() -= pts.rowwise().mean().eval();
    return DiscreteMeasure(std::move(pts));
}

} // namespace

TEST_CASE("neutrality is validated") {
    Mat pts(1, 2);
    pts << 0.0, 1.0;
    Vec unbalanced(2);
    unbalanced << 1.0, -0.5; // net mass
    CHECK_THROWS_AS(NeutralMeasure(pts, unbalanced), std::invalid_argument);
    Vec tilted(2);
    tilted << 1.0, -1.0; // zero mass but net first moment
    CHECK_THROWS_AS(NeutralMeasure(pts, tilted), std::invalid_argument);
}

TEST_CASE("quadratic form hand values") {
    const NeutralMeasure rho = line_witness();
    CHECK(f_alpha_form(rho, 3.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(f_alpha_form(rho, 1.0) == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(f_alpha_form(rho, 4.0) == doctest::Approx(3.375).epsilon(1e-13));
    CHECK(std::abs(f_alpha_form(rho, 2.0)) < 1e-13);
}

TEST_CASE("form invariances") {
    Rng rng(17);
    const NeutralMeasure rho = random_neutral(rng, 2);

    const double theta = 0.83;
    Mat rot(2, 2);
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    const NeutralMeasure turned(rot * rho.points(), rho.weights());
    CHECK(f_alpha_form(turned, 2.5) == doctest::Approx(f_alpha_form(rho, 2.5)).epsilon(1e-12));

    const double lambda = 1.7, alpha = 2.5;
    const NeutralMeasure scaled(lambda * rho.points(), rho.weights());
    CHECK(f_alpha_form(scaled, alpha) ==
          doctest::Approx(std::pow(lambda, alpha) * f_alpha_form(rho, alpha)).epsilon(1e-12));
}

TEST_CASE("sign survey over random neutral measures") {
    const SignReport positive = sign_classify(3.0, 2, 50, 7);
    CHECK(positive.verdict == "strictly positive");
    CHECK(positive.min > 0.0);

    const SignReport negative = sign_classify(1.0, 2, 50, 7);
    CHECK(negative.verdict == "strictly negative");
    CHECK(negative.max < 0.0);

    const SignReport zero = sign_classify(2.0, 3, 50, 7);
    CHECK(zero.verdict == "zero");

    const SignReport quartic = sign_classify(4.0, 2, 50, 7);
    CHECK(quartic.min >= -1e-12);

    CHECK_THROWS_AS(sign_classify(4.5, 2, 10, 7), std::invalid_argument);

    const std::string j = to_json(positive);
    CHECK(j.find("\"verdict\"") != std::string::npos);
}

TEST_CASE("segment second derivative") {
    // mu* = (1/2)(delta_{-1/2} + delta_{1/2}) against the wider pair at +-1:
    // the difference is the hand witness, so a'' = F_alpha / alpha.
    Mat narrow(1, 2), wide(1, 2);
    narrow << -0.5, 0.5;
    wide << -1.0, 1.0;
    const DiscreteMeasure m0{narrow}, m1{wide};
    CHECK(segment_second_derivative(m0, m1, 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(std::abs(segment_second_derivative(m0, m1, 2.0)) < 1e-10);
    CHECK(segment_second_derivative(m0, m1, 4.0) == doctest::Approx(0.84375).epsilon(1e-10));

    CHECK(std::abs(segment_second_derivative(m0, m0, 3.0)) < 1e-12);

    Mat shifted(1, 2);
    shifted << 0.0, 1.0;
    CHECK_THROWS_AS(segment_second_derivative(m0, DiscreteMeasure(std::move(shifted)), 3.0),
                    std::invalid_argument);

    // Random equal-barycenter pairs: interpolation is convex in the energy
    // for 2 < a < 4 and concave for a < 2.
    const DiscreteMeasure a = centered_cloud(21, 2, 7);
    const DiscreteMeasure b = centered_cloud(22, 2, 7);
    CHECK(segment_second_derivative(a, b, 3.0) > 0.0);
    CHECK(segment_second_derivative(a, b, 1.0) < 0.0);
    CHECK(std::abs(segment_second_derivative(a, b, 2.0)) < 1e-12);
}

TEST_CASE("fourier representation agrees on the line") {
    const NeutralMeasure rho = line_witness();
    CHECK(fourier_side(rho, 3.0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(fourier_side(rho, 1.0) == doctest::Approx(-0.5).epsilon(1e-4));
    CHECK(fourier_side(rho, 2.5) ==
          doctest::Approx(f_alpha_form(rho, 2.5)).epsilon(1e-4));

    Rng rng(9);
    const NeutralMeasure planar = random_neutral(rng, 2);
    CHECK_THROWS_AS(fourier_side(planar, 3.0), std::invalid_argument);
}
