#pragma once

#include <Eigen/Dense>

namespace shellmin {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

// sign(u)*|u|^p, the odd power that shows up in every radial force formula.
inline double signed_pow(double u, double p) {
    if (u == 0.0) return 0.0;
    return u > 0.0 ? std::pow(u, p) : -std::pow(-u, p);
}

// r^p for r >= 0 with fast paths for the small integer and half-integer
// exponents that dominate pairwise force loops (beta = 2 gives p = 0, the
// common attraction exponents give p in {1, 1.5, 2}).
inline double radial_power(double r, double p) {
    if (p == 0.0) return 1.0;
    if (p == 1.0) return r;
    if (p == 2.0) return r * r;
    if (p == 1.5) return r * std::sqrt(r);
    if (p == 3.0) return r * r * r;
    if (p == 4.0) {
        const double s = r * r;
        return s * s;
    }
    if (p == 0.5) return std::sqrt(r);
    if (p == 2.5) return r * r * std::sqrt(r);
    return std::pow(r, p);
}

// Kahan-Babuska compensated accumulator; pairwise energy sums are compared
// at 1e-12 near equilibria, where naive summation noise would dominate.
class CompensatedSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace shellmin
