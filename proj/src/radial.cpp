#include "shellmin/radial.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "shellmin/quadrature.hpp"

namespace shellmin {

RadialMixture::RadialMixture(Vec r, Vec w, int n) : radii(std::move(r)), weights(std::move(w)), dim(n) {
    if (n < 1) throw std::invalid_argument("RadialMixture: dim must be >= 1");
    if (radii.size() == 0 || radii.size() != weights.size())
        throw std::invalid_argument("RadialMixture: radii/weights size mismatch");
    if ((radii.array() < 0.0).any())
        throw std::invalid_argument("RadialMixture: radii must be nonnegative");
    if ((weights.array() <= 0.0).any())
        throw std::invalid_argument("RadialMixture: weights must be strictly positive");
    const double total = weights.sum();
    if (std::abs(total - 1.0) > 1e-6)
        throw std::invalid_argument("RadialMixture: weights must sum to 1");
    weights /= total;
}

RadialMixture RadialMixture::single_shell(double R, int n) {
    return RadialMixture(Vec::Constant(1, R), Vec::Constant(1, 1.0), n);
}

double sphere_average(const std::function<double(double, double)>& h, double r, int n,
                      double tol) {
    if (n < 2) throw std::invalid_argument("sphere_average: requires n >= 2");
    const double ratio = unit_sphere_area(n - 1) / unit_sphere_area(n);
    const double p = static_cast<double>(n - 2);
    auto integrand = [&](double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const double dist = std::hypot(r - c, s);
        const double weight = p == 0.0 ? 1.0 : std::pow(s, p);
        return h(dist, c) * weight;
    };
    return ratio * integrate_tanh_sinh(integrand, 0.0, M_PI, tol);
}

namespace {

double g_alpha_nonneg(double alpha, double r, int n, double tol) {
    return sphere_average(
        [&](double d, double y1) { return (r - y1) * std::pow(d, alpha - 4.0); }, r, n, tol);
}

double g_capital_nonneg(double alpha, double r, int n, double tol) {
    return sphere_average(
        [&](double d, double y1) {
            return (r - y1) * (1.0 - y1 * y1) * std::pow(d, alpha - 6.0);
        },
        r, n, tol);
}

void check_g_domain(double alpha, double r, int n) {
    if (n < 2) throw std::invalid_argument("g integrals: requires n >= 2");
    if (!(alpha >= 2.0)) throw std::invalid_argument("g integrals: requires alpha >= 2");
    if (alpha == 2.0 && n == 2 && std::abs(r) == 1.0)
        throw quadrature_error("g integrals: non-convergent at alpha=2, n=2, |r|=1");
}

} // namespace

double g_alpha(double alpha, double r, int n, double tol) {
    check_g_domain(alpha, r, n);
    if (r == 0.0) return 0.0;
    if (r < 0.0) return -g_alpha_nonneg(alpha, -r, n, tol);
    return g_alpha_nonneg(alpha, r, n, tol);
}

double g_capital(double alpha, double r, int n, double tol) {
    check_g_domain(alpha, r, n);
    if (r == 0.0) return 0.0;
    if (r < 0.0) return -g_capital_nonneg(alpha, -r, n, tol);
    return g_capital_nonneg(alpha, r, n, tol);
}

namespace {

// Pure attraction-term integrals of the unit shell:
//   A0(rho) = (1/a) Int |rho e1 - y|^a dsigma(y)   and derivatives A1..A3.
// In 1D the shell is the atom pair at +-1; elsewhere sphere quadrature.
double unit_shell_term(int order, double alpha, double rho, int n, double tol) {
    const double a = alpha;
    if (n == 1) {
        const double um = rho - 1.0;
        const double up = rho + 1.0;
        auto absu = [](double u) { return std::abs(u); };
        switch (order) {
            case 0:
                return (std::pow(absu(um), a) + std::pow(absu(up), a)) / (2.0 * a);
            case 1:
                return 0.5 * (signed_pow(um, a - 1.0) + signed_pow(up, a - 1.0));
            case 2:
                return 0.5 * (a - 1.0) *
                       (std::pow(absu(um), a - 2.0) + std::pow(absu(up), a - 2.0));
            case 3:
                return 0.5 * (a - 1.0) * (a - 2.0) *
                       (signed_pow(um, a - 3.0) + signed_pow(up, a - 3.0));
            default:
                throw std::invalid_argument("unit_shell_term: order must be 0..3");
        }
    }
    // The ratio q = (rho - y1)/d lies in [-1, 1] because d^2 >= (rho - y1)^2,
    // so grouping powers of d around it keeps the integrands finite even at
    // nodes arbitrarily close to the shell (d near underflow).
    switch (order) {
        case 0:
            return sphere_average([&](double d, double) { return std::pow(d, a); }, rho, n, tol) / a;
        case 1:
            return sphere_average(
                [&](double d, double y1) { return (rho - y1) / d * std::pow(d, a - 1.0); }, rho, n,
                tol);
        case 2:
            return sphere_average(
                [&](double d, double y1) {
                    const double q = (rho - y1) / d;
                    return ((a - 2.0) * q * q + 1.0) * std::pow(d, a - 2.0);
                },
                rho, n, tol);
        case 3:
            return (a - 2.0) *
                   sphere_average(
                       [&](double d, double y1) {
                           const double q = (rho - y1) / d;
                           return q * (3.0 + (a - 4.0) * q * q) * std::pow(d, a - 3.0);
                       },
                       rho, n, tol);
        default:
            throw std::invalid_argument("unit_shell_term: order must be 0..3");
    }
}

} // namespace

double shell_radial_derivative(int order, double R, double alpha, double r, int n, double tol) {
    if (order < 0 || order > 3)
        throw std::invalid_argument("shell_radial_derivative: order must be 0..3");
    if (R < 0.0) throw std::invalid_argument("shell_radial_derivative: R must be >= 0");
    if (r < 0.0) {
        // Even extension: f and f2 are even, f1 and f3 odd.
        const double v = shell_radial_derivative(order, R, alpha, -r, n, tol);
        return (order % 2 == 0) ? v : -v;
    }
    if (r == 0.0 && (order == 1 || order == 3)) return 0.0;

    if (R == 0.0) {
        // Point mass at the origin.
        switch (order) {
            case 0: return std::pow(r, alpha) / alpha - 0.5 * r * r;
            case 1: return std::pow(r, alpha - 1.0) - r;
            case 2: return (alpha - 1.0) * std::pow(r, alpha - 2.0) - 1.0;
            default: return (alpha - 1.0) * (alpha - 2.0) * std::pow(r, alpha - 3.0);
        }
    }

    const double rho = r / R;
    const double A = unit_shell_term(order, alpha, rho, n, tol);
    switch (order) {
        case 0: return std::pow(R, alpha) * A - 0.5 * r * r - 0.5 * R * R;
        case 1: return std::pow(R, alpha - 1.0) * A - r;
        case 2: return std::pow(R, alpha - 2.0) * A - 1.0;
        default: return std::pow(R, alpha - 3.0) * A;
    }
}

RadialProfile radial_profile(const RadialMixture& mix, const KernelParams& p, const Vec& grid,
                             double tol) {
    if (p.beta != 2.0)
        throw std::invalid_argument("radial_profile: derivative formulas require beta = 2");
    if (!(p.alpha > 2.0)) throw std::invalid_argument("radial_profile: requires alpha > 2");
    if (p.dim != mix.dim)
        throw std::invalid_argument("radial_profile: kernel/mixture dimension mismatch");
    if (grid.size() == 0) throw std::invalid_argument("radial_profile: empty grid");
    for (Index i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::invalid_argument("radial_profile: grid must be strictly increasing");
    if (grid[0] < 0.0) throw std::invalid_argument("radial_profile: grid must be nonnegative");

    RadialProfile out;
    out.grid = grid;
    out.alpha = p.alpha;
    out.dim = p.dim;
    out.tol = tol;
    out.window_ok = p.dim >= 2 ? (p.alpha > 2.0 && p.alpha < 4.0) : (p.alpha > 3.0);
    out.f = Vec::Zero(grid.size());
    out.f1 = Vec::Zero(grid.size());
    out.f2 = Vec::Zero(grid.size());
    out.f3 = Vec::Zero(grid.size());

    for (Index i = 0; i < grid.size(); ++i) {
        const double r = grid[i];
        double acc[4] = {0.0, 0.0, 0.0, 0.0};
        for (Index s = 0; s < mix.radii.size(); ++s) {
            const double w = mix.weights[s];
            const double R = mix.radii[s];
            for (int order = 0; order < 4; ++order)
                acc[order] += w * shell_radial_derivative(order, R, p.alpha, r, p.dim, tol);
        }
        out.f[i] = acc[0];
        out.f1[i] = acc[1];
        out.f2[i] = acc[2];
        out.f3[i] = acc[3];
    }
    return out;
}

namespace {

// Root of the cubic Hermite interpolant through (a, va, da), (b, vb, db),
// assuming a sign change of the values; bisection on the interpolant.
double hermite_root(double a, double b, double va, double vb, double da, double db) {
    const double h = b - a;
    auto H = [&](double t) {
        const double t2 = t * t;
        const double t3 = t2 * t;
        return va * (2.0 * t3 - 3.0 * t2 + 1.0) + vb * (-2.0 * t3 + 3.0 * t2) +
               h * da * (t3 - 2.0 * t2 + t) + h * db * (t3 - t2);
    };
    double lo = 0.0, hi = 1.0;
    double flo = H(lo);
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = H(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return a + 0.5 * (lo + hi) * h;
}

struct SignScan {
    std::vector<std::pair<Index, Index>> brackets; // significant-value index pairs with opposite sign
    bool any_significant = false;
    int first_sign = 0;
};

SignScan scan_sign_changes(const Vec& values, double noise) {
    SignScan scan;
    Index prev = -1;
    int prev_sign = 0;
    for (Index i = 0; i < values.size(); ++i) {
        if (std::abs(values[i]) <= noise) continue;
        const int sign = values[i] > 0.0 ? 1 : -1;
        if (!scan.any_significant) {
            scan.any_significant = true;
            scan.first_sign = sign;
        } else if (sign != prev_sign) {
            scan.brackets.emplace_back(prev, i);
        }
        prev = i;
        prev_sign = sign;
    }
    return scan;
}

} // namespace

CriticalRadii inflection_and_min(const RadialProfile& profile) {
    const double noise = 10.0 * profile.tol;
    CriticalRadii out{0.0, 0.0};

    const SignScan s2 = scan_sign_changes(profile.f2, noise);
    if (s2.brackets.size() > 1)
        throw structure_error("inflection_and_min: multiple sign changes in f2");
    if (s2.brackets.empty()) {
        if (s2.any_significant && s2.first_sign < 0)
            throw structure_error("inflection_and_min: f2 negative on the whole grid");
        out.r_inflect = 0.0;
    } else {
        const auto [i, j] = s2.brackets.front();
        if (s2.first_sign > 0)
            throw structure_error("inflection_and_min: f2 changes sign from + to -");
        out.r_inflect = hermite_root(profile.grid[i], profile.grid[j], profile.f2[i],
                                     profile.f2[j], profile.f3[i], profile.f3[j]);
    }

    const SignScan s1 = scan_sign_changes(profile.f1, noise);
    if (s1.brackets.size() != 1)
        throw structure_error("inflection_and_min: expected exactly one sign change in f1, found " +
                              std::to_string(s1.brackets.size()));
    if (s1.first_sign > 0)
        throw structure_error("inflection_and_min: f1 changes sign from + to -");
    {
        const auto [i, j] = s1.brackets.front();
        out.r_min = hermite_root(profile.grid[i], profile.grid[j], profile.f1[i], profile.f1[j],
                                 profile.f2[i], profile.f2[j]);
    }
    if (!(out.r_min > out.r_inflect))
        throw structure_error("inflection_and_min: r_min does not exceed the inflection radius");
    return out;
}

void write_csv(const RadialProfile& profile, std::ostream& out) {
    out << "r,f,f1,f2,f3\n";
    char line[256];
    for (Index i = 0; i < profile.grid.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", profile.grid[i],
                      profile.f[i], profile.f1[i], profile.f2[i], profile.f3[i]);
        out << line;
    }
}

} // namespace shellmin
