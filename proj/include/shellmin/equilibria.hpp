#pragma once

#include "shellmin/kernel.hpp"
#include "shellmin/measure.hpp"

namespace shellmin {

// k equal masses 1/k uniformly spaced on the circle of the given radius
// (ambient dimension 2), first atom at angle 0.
struct RingConfig {
    int k;
    double radius;
};

// Regular n-simplex, n+1 equally weighted vertices in R^n, centered at the
// origin; pairwise vertex distance equals edge, circumradius edge*sqrt(n/(2n+2)).
struct SimplexConfig {
    int dim;
    double edge = 1.0;
};

DiscreteMeasure ring_measure(const RingConfig& cfg);
DiscreteMeasure ring_measure(int k, double radius);
DiscreteMeasure simplex_measure(const SimplexConfig& cfg);
DiscreteMeasure simplex_measure(int n, double edge = 1.0);

// 2n equally weighted vertices +-R e_i, the cross-polytope of circumradius R.
DiscreteMeasure cross_polytope_measure(int n, double R);

// count quasi-uniform points on the sphere of radius R: alternating +-R in
// 1D, the exact count-ring in 2D, a Fibonacci lattice in 3D. Dimensions
// above 3 are not supported.
DiscreteMeasure shell_proxy(double R, int n, int count);

// c_gamma = Int |e1 - y|^{gamma-2} (1 - y1) dsigma_1(y) over the unit sphere,
// the coefficient of R^{gamma-1} in the radial force a steady shell exerts on
// its own atoms. Requires gamma > 1 and n >= 2.
double c_alpha_constant(double gamma, int n, double tol = 1e-10);

// Radius at which a single spherical shell is steady: sign-change scan on a
// log-spaced grid in [1e-3, e^{1/beta}] followed by bisection to 1e-12
// bracket width on c_alpha r^{alpha-1} - c_beta r^{beta-1}. In 1D the shell
// is the atom pair at +-R and exact force balance gives R = 1/2.
// Requires alpha > beta > 1.
double shell_radius_rootfind(const KernelParams& p, double tol = 1e-10);

// Steady-shell radius for quadratic repulsion, determined three ways:
//   root                - bracketed root of d/dr f_{sigma_R}(r) at r = R
//                         (ground truth, always used downstream)
//   closed_form         - (1/(f'_{sigma_1}(1)+1))^{1/(alpha-2)}, consistent
//                         with root to rounding
//   closed_form_variant - (2/(f'_{sigma_1}(1)+2))^{1/(alpha-2)}, an
//                         inconsistent variant of the closed form that is
//                         reported for comparison and never used
struct ShellRadiusSolution {
    double root;
    double closed_form;
    double closed_form_variant;
};
ShellRadiusSolution steady_shell_radius(const KernelParams& p, double tol = 1e-10);

// Radius making the k-ring steady: bisection on the radial force the ring
// exerts on one of its own atoms, bracketed inside [R/2, 2R] around the
// shell radius. Requires k >= 3, dim 2, alpha > beta > 1.
double ring_steady_radius(int k, const KernelParams& p, double tol = 1e-10);

// Stationarity diagnostics for a discrete measure under a kernel:
//   grad_max         - max over support of |grad V|
//   value_spread     - max - min of V over support
//   exterior_min_gap - min of V over a probe grid (out to twice the support
//                      radius around the center of mass) minus max of V over
//                      support; a negative gap exposes a lower potential
//                      value off the support, i.e. a non-global local minimum
struct StationarityReport {
    double grad_max;
    double value_spread;
    double exterior_min_gap;
};
StationarityReport euler_lagrange_residual(const Kernel& k, const DiscreteMeasure& m);

} // namespace shellmin
