#pragma once

#include "shellmin/errors.hpp"
#include "shellmin/types.hpp"

namespace shellmin {

// Exponent pair of the power-law kernel W(x) = |x|^alpha/alpha - |x|^beta/beta,
// together with the ambient dimension. Validity window: alpha > beta > -dim,
// both exponents nonzero (the normalization 1/exponent is undefined at 0).
struct KernelParams {
    double alpha;
    double beta;
    int dim;

    KernelParams(double a, double b, int n) : alpha(a), beta(b), dim(n) {
        if (n < 1) throw std::invalid_argument("KernelParams: dim must be >= 1");
        if (!(a > b)) throw std::invalid_argument("KernelParams: need alpha > beta");
        if (!(b > -static_cast<double>(n)))
            throw std::invalid_argument("KernelParams: need beta > -dim");
        if (a == 0.0 || b == 0.0)
            throw std::invalid_argument("KernelParams: zero exponent is not representable");
    }
};

// Euler Gamma via the Lanczos approximation (g = 7, 9 coefficients) with the
// reflection formula for z < 1/2. Relative error <= 1e-13 on |z| <= 30.
// Throws singularity_error at nonpositive integers.
double gamma(double z);

// Surface measure of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

// Sign-carrying constant of the Fourier representation of the quadratic form
// F_alpha: 2^{alpha + n/2} Gamma((alpha+n)/2) / Gamma(-alpha/2).
// Negative on (0,2), positive on (2,4); domain error at alpha = 2 or outside (0,4).
double fourier_constant(double alpha, int n);

// Steady shell radius in closed form:
//   R = (1/2) * [ G((beta+n-1)/2) G(alpha/2+n-1) / ( G(beta/2+n-1) G((alpha+n-1)/2) ) ]^{1/(alpha-beta)}.
// Evaluated verbatim; Gamma pole errors propagate.
double shell_radius_closed_form(const KernelParams& p);

// Repulsion-exponent threshold beta*(alpha, n) separating stable from
// unstable shells: ((3-n)alpha - 10 + 7n - n^2) / (alpha + n - 3).
double shell_stability_threshold(double alpha, int n);

// Diameter bound for minimizer supports: `zero` is the positive zero
// z = (alpha/beta)^{1/(alpha-beta)} of the kernel, `limit` the uniform cap
// e^{1/beta} approached as alpha decreases to beta. Requires beta > 0.
struct DiameterBound {
    double zero;
    double limit;
};
DiameterBound diameter_bound(const KernelParams& p);

} // namespace shellmin
