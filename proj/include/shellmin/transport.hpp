#pragma once

#include <vector>

#include "shellmin/kernel.hpp"
#include "shellmin/measure.hpp"

namespace shellmin {

// Optimal pairing of the atoms of two equal-cardinality uniform measures:
// match[i] is the atom of b paired with atom i of a, and cost is the matched
// assignment value (mean of |x_i - y_{match[i]}|^p, before the 1/p root).
struct Coupling {
    std::vector<Index> match;
    double p;
    double cost;
};

Coupling optimal_coupling(const DiscreteMeasure& a, const DiscreteMeasure& b, double p);

// d_p(a,b) = (min over pairings of mean |x - y|^p)^{1/p} for uniform
// equal-cardinality measures, N <= 2048. Solved by sorting in 1D (exact for
// every p >= 1) and by exact assignment otherwise. p = infinity delegates to
// wasserstein_inf.
double wasserstein_p(const DiscreteMeasure& a, const DiscreteMeasure& b, double p);

// Bottleneck distance d_inf: the smallest threshold t such that a coupling
// exists using only pairs within distance t. Uniform measures whose
// cardinalities are each <= 4096 (not necessarily equal when the masses
// admit a common refinement; duplicates are collapsed first). Binary search
// over the sorted distinct pairwise distances with max-flow feasibility.
double wasserstein_inf(const DiscreteMeasure& a, const DiscreteMeasure& b);

// d_p from m (translated to its center of mass) to the energy-minimizing
// family of the kernel: the steady shell for 2 < alpha <= 4 (alpha > 3 in
// 1D), represented by a same-cardinality proxy, or the unit-edge simplex
// orbit for alpha > 4, minimized over 64 sampled rotations (cardinality must
// be a multiple of n+1). Requires beta = 2. p may be infinity.
double distance_to_minimizer(const DiscreteMeasure& m, const Kernel& k, double p);

namespace detail {
// Assignment-solver path regardless of dimension, for cross-checking the 1D
// sorted computation.
double wasserstein_p_assignment(const DiscreteMeasure& a, const DiscreteMeasure& b, double p);
} // namespace detail

} // namespace shellmin
