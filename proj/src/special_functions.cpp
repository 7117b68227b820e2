#include "shellmin/special_functions.hpp"

#include <cmath>

namespace shellmin {

namespace {

// sin(pi z) with exact argument reduction; std::sin(M_PI*z) alone loses
// relative accuracy for |z| beyond a few units, which the reflection
// formula cannot afford near negative integers.
double sin_pi(double z) {
    const double r = std::remainder(z, 2.0); // exact, r in [-1, 1]
    return std::sin(M_PI * r);
}

bool is_nonpositive_integer(double z) {
    return z <= 0.0 && z == std::floor(z);
}

} // namespace

double gamma(double z) {
    if (is_nonpositive_integer(z))
        throw singularity_error("gamma: pole at nonpositive integer argument");

    static const double g = 7.0;
    static const double coeff[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };

    if (z < 0.5) return M_PI / (sin_pi(z) * gamma(1.0 - z));

    const double zm = z - 1.0;
    double sum = coeff[0];
    for (int i = 1; i < 9; ++i) sum += coeff[i] / (zm + static_cast<double>(i));
    const double base = zm + g + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(base, zm + 0.5) * std::exp(-base) * sum;
}

double unit_sphere_area(int n) {
    if (n < 1) throw std::invalid_argument("unit_sphere_area: need n >= 1");
    const double nd = static_cast<double>(n);
    return 2.0 * std::pow(M_PI, 0.5 * nd) / gamma(0.5 * nd);
}

double fourier_constant(double alpha, int n) {
    if (n < 1) throw std::invalid_argument("fourier_constant: need n >= 1");
    if (!(alpha > 0.0 && alpha < 4.0) || alpha == 2.0)
        throw std::domain_error("fourier_constant: alpha must lie in (0,2) or (2,4)");
    const double nd = static_cast<double>(n);
    return std::pow(2.0, alpha + 0.5 * nd) * gamma(0.5 * (alpha + nd)) / gamma(-0.5 * alpha);
}

double shell_radius_closed_form(const KernelParams& p) {
    const double a = p.alpha;
    const double b = p.beta;
    const double n = static_cast<double>(p.dim);
    const double ratio = gamma(0.5 * (b + n - 1.0)) * gamma(0.5 * a + n - 1.0) /
                         (gamma(0.5 * b + n - 1.0) * gamma(0.5 * (a + n - 1.0)));
    return 0.5 * std::pow(ratio, 1.0 / (a - b));
}

double shell_stability_threshold(double alpha, int n) {
    const double nd = static_cast<double>(n);
    const double den = alpha + nd - 3.0;
    if (den == 0.0)
        throw std::domain_error("shell_stability_threshold: undefined at alpha + n = 3");
    return ((3.0 - nd) * alpha - 10.0 + 7.0 * nd - nd * nd) / den;
}

DiameterBound diameter_bound(const KernelParams& p) {
    if (!(p.beta > 0.0))
        throw std::domain_error("diameter_bound: requires beta > 0");
    DiameterBound b;
    b.zero = std::pow(p.alpha / p.beta, 1.0 / (p.alpha - p.beta));
    b.limit = std::exp(1.0 / p.beta);
    return b;
}

} // namespace shellmin
