#pragma once

#include "shellmin/measure.hpp"
#include "shellmin/special_functions.hpp"

namespace shellmin {

// Power-law attractive-repulsive pair potential W(x) = |x|^a/a - |x|^b/b.
struct Kernel {
    KernelParams params;
    explicit Kernel(KernelParams p) : params(p) {}
    Kernel(double alpha, double beta, int dim) : params(alpha, beta, dim) {}
};

// W at distance r >= 0. W(0) = 0 for positive exponents; singularity error
// at r = 0 if either exponent is <= 0.
double kernel_value_at(const KernelParams& p, double r);
double kernel_value(const Kernel& k, const Vec& x);

// grad W(x) = (|x|^{a-2} - |x|^{b-2}) x. Zero vector at x = 0 when both
// exponents are >= 2 (the exact limit); singularity error at x = 0 otherwise.
Vec kernel_gradient(const Kernel& k, const Vec& x);

// E(mu) = (1/2) sum_{i,j} w_i w_j W(x_i - x_j), accumulated with compensated
// summation. Diagonal terms contribute W(0) = 0; coincident distinct atoms
// raise a singularity error only for negative exponents.
double interaction_energy(const Kernel& k, const DiscreteMeasure& m);

// V(x) = sum_j w_j W(x - x_j) and its gradient.
double potential_field(const Kernel& k, const DiscreteMeasure& m, const Vec& x);
Vec field_gradient(const Kernel& k, const DiscreteMeasure& m, const Vec& x);

// Pure attraction term sum_{i<j} w_i w_j |x_i-x_j|^alpha / alpha, used by the
// convexity module's segment energies.
double power_energy(const DiscreteMeasure& m, double alpha);

} // namespace shellmin
