#pragma once

#include <iosfwd>
#include <string>

#include "shellmin/errors.hpp"
#include "shellmin/types.hpp"

namespace shellmin {

// Weighted point cloud representing a probability measure on R^n.
// Points are the columns of an n x N matrix. Weights are strictly positive
// and are normalized at construction; a weight sum off by more than 1e-6 is
// rejected instead of silently rescaled. Duplicate points are permitted.
// Instances are immutable after construction and safe to share across threads.
class DiscreteMeasure {
  public:
    DiscreteMeasure(Mat points, Vec weights);

    // Uniform weights 1/N.
    explicit DiscreteMeasure(Mat points);

    int dim() const { return static_cast<int>(points_.rows()); }
    Index size() const { return points_.cols(); }
    const Mat& points() const { return points_; }
    const Vec& weights() const { return weights_; }
    Vec point(Index i) const { return points_.col(i); }
    bool uniform(double tol = 1e-12) const;

  private:
    Mat points_;
    Vec weights_;
};

// Difference of two probability measures, rho = plus - minus; total mass is
// zero by construction. Both components must share the ambient dimension.
struct SignedMeasure {
    DiscreteMeasure plus;
    DiscreteMeasure minus;

    SignedMeasure(DiscreteMeasure p, DiscreteMeasure m);
};

Vec center_of_mass(const DiscreteMeasure& m);
DiscreteMeasure centered(const DiscreteMeasure& m);
DiscreteMeasure translated(const DiscreteMeasure& m, const Vec& shift);
Mat second_moment_matrix(const DiscreteMeasure& m);
double support_diameter(const DiscreteMeasure& m);

// JSON schema: {"dim": n, "points": [[...],...], "weights": [...]};
// "weights" omitted means uniform.
std::string to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(const std::string& text);
DiscreteMeasure load_measure(const std::string& path);
void save_measure(const DiscreteMeasure& m, const std::string& path);

} // namespace shellmin
