#pragma once

#include <string>

#include "shellmin/measure.hpp"
#include "shellmin/rng.hpp"

namespace shellmin {

// Compactly supported signed measure with zero total mass and zero first
// moment, stored as atoms with signed weights. The quadratic form F_alpha is
// sign-definite exactly on this class.
class NeutralMeasure {
  public:
    // Validates |sum w| < 1e-12 and |sum w x| < 1e-12 componentwise.
    NeutralMeasure(Mat points, Vec signed_weights);

    // plus - minus for two probability measures with a common barycenter.
    explicit NeutralMeasure(const SignedMeasure& sm);

    int dim() const { return static_cast<int>(points_.rows()); }
    Index size() const { return points_.cols(); }
    const Mat& points() const { return points_; }
    const Vec& weights() const { return weights_; }

  private:
    Mat points_;
    Vec weights_;
};

// F_alpha(rho) = sum_{i,j} s_i s_j |x_i - x_j|^alpha, the exact double sum.
// Requires alpha > 0.
double f_alpha_form(const NeutralMeasure& rho, double alpha);

// Random neutral measure: 6-12 atoms uniform in the unit ball with random
// signs, weights projected onto the zero-mass / zero-first-moment constraints
// and rescaled so each side has unit mass. Retries draws whose projection
// degenerates.
NeutralMeasure random_neutral(Rng& rng, int n);

// Sign survey of F_alpha over seeded random neutral measures.
struct SignReport {
    double alpha;
    int n;
    int trials;
    double min;
    double max;
    std::string verdict; // strictly positive/strictly negative/zero/nonnegative/indefinite
};
SignReport sign_classify(double alpha, int n, int trials, std::uint64_t seed);
std::string to_json(const SignReport& report);

// Constant second derivative of t -> energy of (1-t) m0 + t m1 under the
// pure power kernel |x|^alpha / alpha, equal to F_alpha(m1 - m0)/alpha.
// Cross-validated internally against the exact three-point second difference
// of the segment energy at t = 0, 1/2, 1.
double segment_second_derivative(const DiscreteMeasure& m0, const DiscreteMeasure& m1,
                                 double alpha);

// Independent evaluation of F_alpha through its frequency-side representation
// C(alpha) Int |xi|^{-alpha-1} |rho_hat(xi)|^2 dxi, with rho_hat the finite
// trigonometric sum over the atoms. 1D only; alpha in (0,2) or (2,4).
double fourier_side(const NeutralMeasure& rho, double alpha);

} // namespace shellmin
