#pragma once

#include <functional>
#include <iosfwd>

#include "shellmin/special_functions.hpp"
#include "shellmin/types.hpp"

namespace shellmin {

// Spherically symmetric probability measure given as a finite mixture of
// concentric shells sigma_R (in 1D a shell is the atom pair at +-R with half
// masses). Weights are normalized at construction like DiscreteMeasure.
struct RadialMixture {
    Vec radii;
    Vec weights;
    int dim;

    RadialMixture(Vec r, Vec w, int n);
    static RadialMixture single_shell(double R, int n);
};

// Tabulated radial potential f(r) = V(r e1) of a shell mixture under the
// kernel with attraction exponent alpha and quadratic repulsion, together
// with its first three derivatives evaluated from their own integral
// formulas (not by differencing).
struct RadialProfile {
    Vec grid;
    Vec f, f1, f2, f3;
    double alpha = 0.0;
    int dim = 0;
    double tol = 0.0;
    bool window_ok = true; // 2 < alpha < 4 for n >= 2; alpha > 3 for n = 1
};

// Average of h(|r e1 - y|, y1) over the unit sphere S^{n-1}:
//   (omega_{n-1}/omega_n) Int_0^pi h(sqrt(r^2-2r cos t+1), cos t) sin^{n-2} t dt,
// to tolerance tol (hybrid absolute/relative, see quadrature). Requires n >= 2.
double sphere_average(const std::function<double(double, double)>& h, double r, int n,
                      double tol = 1e-10);

// Sphere integrals controlling the sign of f''':
//   g_alpha(r)  = Int (r - y1) |r e1 - y|^{alpha-4} dsigma(y)
//   g_capital(r)= Int (r - y1)(1 - y1^2) |r e1 - y|^{alpha-6} dsigma(y)
// Odd in r by construction. alpha >= 2, n >= 2; the pair (alpha=2, n=2, |r|=1)
// is non-convergent and raises quadrature_error.
double g_alpha(double alpha, double r, int n, double tol = 1e-10);
double g_capital(double alpha, double r, int n, double tol = 1e-10);

// f_{sigma_R} and derivatives at radius r for a single shell of radius R >= 0
// (R = 0 degenerates to the point mass at the origin); order in {0,1,2,3}.
double shell_radial_derivative(int order, double R, double alpha, double r, int n,
                               double tol = 1e-10);

// Profile of a shell mixture on the given positive, strictly increasing grid.
// Requires p.beta == 2 and p.alpha > 2. Values at r = 0 follow the even
// extension (f1 = f3 = 0).
RadialProfile radial_profile(const RadialMixture& mix, const KernelParams& p, const Vec& grid,
                             double tol = 1e-10);

// Unique zero of f2 (0 when f2 > 0 on the whole grid) and the unique positive
// zero of f1, refined by monotone cubic interpolation of the tabulated value/
// derivative pairs. Sign changes are counted only where the bracketing values
// exceed 10x the profile tolerance; extra sign changes raise structure_error.
struct CriticalRadii {
    double r_inflect;
    double r_min;
};
CriticalRadii inflection_and_min(const RadialProfile& profile);

// CSV with header r,f,f1,f2,f3.
void write_csv(const RadialProfile& profile, std::ostream& out);

} // namespace shellmin
