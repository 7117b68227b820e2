#include "shellmin/equilibria.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "shellmin/radial.hpp"
#include "shellmin/rng.hpp"

namespace shellmin {

DiscreteMeasure ring_measure(const RingConfig& cfg) {
    if (cfg.k < 2) throw std::invalid_argument("ring_measure: k must be >= 2");
    if (!(cfg.radius > 0.0)) throw std::invalid_argument("ring_measure: radius must be positive");
    Mat pts(2, cfg.k);
    for (int m = 0; m < cfg.k; ++m) {
        const double theta = 2.0 * M_PI * m / cfg.k;
        pts(0, m) = cfg.radius * std::cos(theta);
        pts(1, m) = cfg.radius * std::sin(theta);
    }
    return DiscreteMeasure(std::move(pts));
}

DiscreteMeasure ring_measure(int k, double radius) { return ring_measure(RingConfig{k, radius}); }

DiscreteMeasure simplex_measure(const SimplexConfig& cfg) {
    const int n = cfg.dim;
    if (n < 1) throw std::invalid_argument("simplex_measure: dim must be >= 1");
    if (!(cfg.edge > 0.0)) throw std::invalid_argument("simplex_measure: edge must be positive");
    // Vertices e_i/sqrt(2) plus the symmetric point lambda*(1,...,1) on the
    // diagonal; all pairwise distances are exactly 1 before scaling.
    Mat pts = Mat::Zero(n, n + 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) pts(i, i) = inv_sqrt2;
    const double lambda = (1.0 - std::sqrt(n + 1.0)) / (std::sqrt(2.0) * n);
    pts.col(n).setConstant(lambda);
    const Vec centroid = pts.rowwise().mean();
    pts.colwise() -= centroid;
    pts *= cfg.edge;
    return DiscreteMeasure(std::move(pts));
}

DiscreteMeasure simplex_measure(int n, double edge) {
    return simplex_measure(SimplexConfig{n, edge});
}

DiscreteMeasure cross_polytope_measure(int n, double R) {
    if (n < 1) throw std::invalid_argument("cross_polytope_measure: dim must be >= 1");
    if (!(R > 0.0)) throw std::invalid_argument("cross_polytope_measure: radius must be positive");
    Mat pts = Mat::Zero(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        pts(i, 2 * i) = R;
        pts(i, 2 * i + 1) = -R;
    }
    return DiscreteMeasure(std::move(pts));
}

DiscreteMeasure shell_proxy(double R, int n, int count) {
    if (count < 1) throw std::invalid_argument("shell_proxy: count must be >= 1");
    if (!(R > 0.0)) throw std::invalid_argument("shell_proxy: radius must be positive");
    switch (n) {
        case 1: {
            Mat pts(1, count);
            for (int j = 0; j < count; ++j) pts(0, j) = (j % 2 == 0) ? R : -R;
            return DiscreteMeasure(std::move(pts));
        }
        case 2:
            return ring_measure(count, R);
        case 3: {
            // Fibonacci lattice: uniform latitudes, golden-angle longitudes.
            Mat pts(3, count);
            const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
            for (int j = 0; j < count; ++j) {
                const double z = 1.0 - (2.0 * j + 1.0) / count;
                const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
                const double phi = golden_angle * j;
                pts(0, j) = R * rho * std::cos(phi);
                pts(1, j) = R * rho * std::sin(phi);
                pts(2, j) = R * z;
            }
            return DiscreteMeasure(std::move(pts));
        }
        default:
            throw std::invalid_argument("shell_proxy: supported for dimensions 1..3 only");
    }
}

double c_alpha_constant(double gamma, int n, double tol) {
    if (!(gamma > 1.0)) throw std::invalid_argument("c_alpha_constant: requires gamma > 1");
    if (n < 2) throw std::invalid_argument("c_alpha_constant: requires n >= 2");
    return sphere_average(
        [&](double d, double y1) { return std::pow(d, gamma - 2.0) * (1.0 - y1); }, 1.0, n, tol);
}

namespace {

// Bisect phi on a bracket with phi(lo) < 0 < phi(hi) (or the reverse) to
// absolute width `width`.
template <class F>
double bisect(F&& phi, double lo, double hi, double flo, double width) {
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        const double fm = phi(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Scan phi on a log-spaced grid in [lo, hi] for a sign change, then bisect.
template <class F>
double scan_and_bisect(F&& phi, double lo, double hi, const char* what) {
    constexpr int kScan = 64;
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    double prev_r = lo;
    double prev_f = phi(lo);
    for (int i = 1; i <= kScan; ++i) {
        const double r = std::exp(log_lo + (log_hi - log_lo) * i / kScan);
        const double f = phi(r);
        if (prev_f == 0.0) return prev_r;
        if ((f > 0.0) != (prev_f > 0.0)) return bisect(phi, prev_r, r, prev_f, 1e-12);
        prev_r = r;
        prev_f = f;
    }
    throw bracketing_error(std::string(what) + ": no sign change on the scan grid");
}

} // namespace

double shell_radius_rootfind(const KernelParams& p, double tol) {
    if (!(p.beta > 1.0))
        throw std::invalid_argument("shell_radius_rootfind: requires alpha > beta > 1");
    if (p.dim == 1) return 0.5; // exact two-atom force balance, any exponents
    const double ca = c_alpha_constant(p.alpha, p.dim, tol);
    const double cb = c_alpha_constant(p.beta, p.dim, tol);
    auto phi = [&](double r) {
        return ca * std::pow(r, p.alpha - 1.0) - cb * std::pow(r, p.beta - 1.0);
    };
    return scan_and_bisect(phi, 1e-3, std::exp(1.0 / p.beta), "shell_radius_rootfind");
}

ShellRadiusSolution steady_shell_radius(const KernelParams& p, double tol) {
    if (p.beta != 2.0)
        throw std::invalid_argument("steady_shell_radius: requires quadratic repulsion (beta = 2)");
    if (!(p.alpha > 2.0)) throw std::invalid_argument("steady_shell_radius: requires alpha > 2");
    // d/dr f_{sigma_R}(r) at r = R equals R^{alpha-1} A1(1) - R where A1 is
    // the unit-shell force integral; f'_{sigma_1}(1) = A1(1) - 1.
    const double f1_at_1 = shell_radial_derivative(1, 1.0, p.alpha, 1.0, p.dim, tol);
    auto phi = [&](double R) {
        return std::pow(R, p.alpha - 1.0) * (f1_at_1 + 1.0) - R;
    };
    ShellRadiusSolution out;
    out.root = scan_and_bisect(phi, 1e-3, std::exp(1.0 / p.beta), "steady_shell_radius");
    out.closed_form = std::pow(1.0 / (f1_at_1 + 1.0), 1.0 / (p.alpha - 2.0));
    out.closed_form_variant = std::pow(2.0 / (f1_at_1 + 2.0), 1.0 / (p.alpha - 2.0));
    return out;
}

double ring_steady_radius(int k, const KernelParams& p, double tol) {
    if (k < 3) throw std::invalid_argument("ring_steady_radius: requires k >= 3");
    if (p.dim != 2) throw std::invalid_argument("ring_steady_radius: requires dim 2");
    if (!(p.beta > 1.0))
        throw std::invalid_argument("ring_steady_radius: requires alpha > beta > 1");
    const Kernel kernel(p);
    // Radial force on the atom at angle 0 of the k-ring of radius R.
    auto radial_force = [&](double R) {
        const DiscreteMeasure ring = ring_measure(k, R);
        const Vec g = field_gradient(kernel, ring, ring.point(0));
        return g[0];
    };
    const double R0 = shell_radius_closed_form(p);
    double lo = 0.5 * R0;
    double hi = 2.0 * R0;
    double flo = radial_force(lo);
    double fhi = radial_force(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw bracketing_error("ring_steady_radius: no sign change in [R/2, 2R]");
    (void)tol;
    return bisect(radial_force, lo, hi, flo, 1e-12);
}

namespace {

// Probe directions for the exterior scan: full circle in 2D, Fibonacci
// lattice in 3D, seeded unit vectors above.
std::vector<Vec> probe_directions(int n, int count) {
    std::vector<Vec> dirs;
    dirs.reserve(count);
    if (n == 2) {
        for (int l = 0; l < count; ++l) {
            const double theta = 2.0 * M_PI * l / count;
            Vec d(2);
            d << std::cos(theta), std::sin(theta);
            dirs.push_back(std::move(d));
        }
    } else if (n == 3) {
        const DiscreteMeasure sphere = shell_proxy(1.0, 3, count);
        for (Index l = 0; l < sphere.size(); ++l) dirs.push_back(sphere.point(l));
    } else {
        Rng rng(derive_seed(0x70b3d0ffULL, static_cast<std::uint64_t>(n)));
        for (int l = 0; l < count; ++l) dirs.push_back(rng.unit_vector(n));
    }
    return dirs;
}

} // namespace

StationarityReport euler_lagrange_residual(const Kernel& k, const DiscreteMeasure& m) {
    StationarityReport out{0.0, 0.0, 0.0};
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin;
    for (Index i = 0; i < m.size(); ++i) {
        const Vec x = m.point(i);
        out.grad_max = std::max(out.grad_max, field_gradient(k, m, x).norm());
        const double v = potential_field(k, m, x);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    out.value_spread = vmax - vmin;

    const Vec com = center_of_mass(m);
    double support_radius = 0.0;
    for (Index i = 0; i < m.size(); ++i)
        support_radius = std::max(support_radius, (m.point(i) - com).norm());
    const double extent = 2.0 * (support_radius > 0.0 ? support_radius : 1.0);

    double probe_min = std::numeric_limits<double>::infinity();
    const int n = m.dim();
    if (n == 1) {
        constexpr int kProbes = 4096;
        for (int j = 0; j < kProbes; ++j) {
            Vec x(1);
            x[0] = com[0] - extent + 2.0 * extent * j / (kProbes - 1);
            probe_min = std::min(probe_min, potential_field(k, m, x));
        }
    } else {
        constexpr int kRadii = 64;
        constexpr int kDirs = 64;
        const std::vector<Vec> dirs = probe_directions(n, kDirs);
        const double center_value = potential_field(k, m, com);
        probe_min = center_value;

        // Coarse radial scan per direction, then golden-section refinement at
        // every interior local minimum: shallow dips just off the support are
        // narrower than the coarse spacing.
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        std::vector<double> vals(kRadii);
        for (const Vec& d : dirs) {
            auto along = [&](double r) { return potential_field(k, m, com + r * d); };
            vals[0] = center_value;
            for (int j = 1; j < kRadii; ++j) {
                vals[j] = along(extent * j / (kRadii - 1));
                probe_min = std::min(probe_min, vals[j]);
            }
            for (int j = 1; j + 1 < kRadii; ++j) {
                if (vals[j] > vals[j - 1] || vals[j] > vals[j + 1]) continue;
                double a = extent * (j - 1) / (kRadii - 1);
                double b = extent * (j + 1) / (kRadii - 1);
                double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
                double f1 = along(x1), f2 = along(x2);
                for (int it = 0; it < 40; ++it) {
                    if (f1 <= f2) {
                        b = x2, x2 = x1, f2 = f1;
                        x1 = b - phi * (b - a);
                        f1 = along(x1);
                    } else {
                        a = x1, x1 = x2, f1 = f2;
                        x2 = a + phi * (b - a);
                        f2 = along(x2);
                    }
                }
                probe_min = std::min(probe_min, std::min(f1, f2));
            }
        }
    }
    out.exterior_min_gap = probe_min - vmax;
    return out;
}

} // namespace shellmin
