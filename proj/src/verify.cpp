#include "shellmin/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "shellmin/convexity.hpp"
#include "shellmin/dynamics.hpp"
#include "shellmin/equilibria.hpp"
#include "shellmin/radial.hpp"
#include "shellmin/rng.hpp"
#include "shellmin/transport.hpp"

namespace shellmin {

namespace {

constexpr std::uint64_t kSeedBase = 0x5ca1ab1eULL;

std::string fmt(const char* format, ...) {
    char buffer[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buffer, sizeof buffer, format, args);
    va_end(args);
    return std::string(buffer);
}

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& label) {
        if (!condition) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << "FAILED " << label;
        }
    }

    void note(const std::string& label) {
        if (detail.tellp() > 0) detail << "; ";
        detail << label;
    }
};

// ---- 1: shell radius determinations agree -------------------------------

Check radius_consistency() {
    Check c;
    double worst_closed = 0.0;
    for (int n = 1; n <= 8; ++n) {
        const double got = shell_radius_closed_form(KernelParams(4.0, 2.0, n));
        const double want = std::sqrt(n / (2.0 * n + 2.0));
        worst_closed = std::max(worst_closed, std::abs(got - want));
    }
    c.require(worst_closed <= 1e-12,
              fmt("closed form vs sqrt(n/(2n+2)), worst %.3g", worst_closed));
    c.note(fmt("closed-form dev %.1e", worst_closed));

    double worst_root = 0.0;
    for (double alpha : {2.5, 3.0, 3.5, 4.0}) {
        for (int n : {2, 3}) {
            const KernelParams p(alpha, 2.0, n);
            worst_root = std::max(
                worst_root, std::abs(shell_radius_closed_form(p) - shell_radius_rootfind(p)));
        }
    }
    c.require(worst_root <= 1e-8, fmt("closed form vs rootfind, worst %.3g", worst_root));
    c.note(fmt("rootfind dev %.1e", worst_root));

    const double r322 = shell_radius_rootfind(KernelParams(3.0, 2.0, 2));
    const double dev = std::abs(r322 - 3.0 * M_PI / 16.0);
    c.require(dev <= 1e-8, fmt("(3,2,2) vs 3pi/16, dev %.3g", dev));
    c.note(fmt("(3,2,2) dev %.1e", dev));
    return c;
}

// ---- 2: sphere force integrals vanish for n=2 and are positive for n=3 --

Check force_integral_signs() {
    Check c;
    double worst2 = 0.0;
    double min3 = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 9; ++i) {
        const double r = 0.1 * i;
        worst2 = std::max({worst2, std::abs(g_alpha(2.0, r, 2)), std::abs(g_capital(2.0, r, 2))});
        min3 = std::min({min3, g_alpha(2.0, r, 3), g_capital(2.0, r, 3), g_alpha(3.0, r, 3),
                         g_capital(3.0, r, 3)});
    }
    c.require(worst2 < 1e-9, fmt("n=2 vanishing, worst %.3g", worst2));
    c.require(min3 > 0.0, fmt("n=3 positivity, min %.3g", min3));
    c.note(fmt("n=2 worst %.1e, n=3 min %.3g", worst2, min3));
    return c;
}

// ---- 3: third radial derivative positive; derivatives consistent --------

Check third_derivative() {
    Check c;
    const Vec grid = Vec::LinSpaced(200, 0.05, 3.0);
    double min_f3 = std::numeric_limits<double>::infinity();
    double worst_fd = 0.0;
    double worst_identity = 0.0;
    int case_id = 0;

    for (double alpha : {2.5, 3.0, 3.5}) {
        for (int n : {2, 3}) {
            const KernelParams p(alpha, 2.0, n);
            std::vector<RadialMixture> mixtures;
            mixtures.push_back(RadialMixture::single_shell(1.0, n));
            for (int trial = 0; trial < 2; ++trial) {
                Rng rng(derive_seed(kSeedBase, 3000 + 10 * case_id + trial));
                Vec radii(5), w(5);
                for (int s = 0; s < 5; ++s) {
                    radii[s] = rng.uniform(0.2, 1.2);
                    w[s] = rng.uniform(0.5, 1.5);
                }
                w /= w.sum();
                mixtures.emplace_back(radii, w, n);
            }
            for (std::size_t mix_id = 0; mix_id < mixtures.size(); ++mix_id) {
                const RadialProfile prof = radial_profile(mixtures[mix_id], p, grid);
                min_f3 = std::min(min_f3, prof.f3.minCoeff());
                if (mix_id >= 2) continue;
                // Chain of centered differences, each order against the next
                // derivative's own integral formula.
                auto deriv = [&](int order, double r) {
                    double acc = 0.0;
                    const RadialMixture& mix = mixtures[mix_id];
                    for (Index s = 0; s < mix.radii.size(); ++s)
                        acc += mix.weights[s] *
                               shell_radial_derivative(order, mix.radii[s], alpha, r, n, 1e-12);
                    return acc;
                };
                const double h = 1e-4;
                for (double r : {0.3, 0.7, 1.1, 1.7, 2.4}) {
                    for (int order = 1; order <= 3; ++order) {
                        const double fd =
                            (deriv(order - 1, r + h) - deriv(order - 1, r - h)) / (2.0 * h);
                        const double exact = deriv(order, r);
                        const double err =
                            std::abs(fd - exact) / std::max(std::abs(exact), 1e-2);
                        worst_fd = std::max(worst_fd, err);
                    }
                }
            }
            // f3/(alpha-2) = (alpha-1) g_alpha + (4-alpha) G_alpha on the
            // unit shell.
            for (double r : {0.3, 0.8, 1.3, 2.2}) {
                const double lhs =
                    shell_radial_derivative(3, 1.0, alpha, r, n, 1e-12) / (alpha - 2.0);
                const double rhs = (alpha - 1.0) * g_alpha(alpha, r, n, 1e-12) +
                                   (4.0 - alpha) * g_capital(alpha, r, n, 1e-12);
                worst_identity =
                    std::max(worst_identity, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
            }
            ++case_id;
        }
    }
    c.require(min_f3 > 0.0, fmt("f3 positivity, min %.3g", min_f3));
    c.require(worst_fd <= 1e-5, fmt("derivative consistency, worst rel %.3g", worst_fd));
    c.require(worst_identity <= 1e-8, fmt("combination identity, worst %.3g", worst_identity));
    c.note(fmt("min f3 %.3g, fd %.1e, identity %.1e", min_f3, worst_fd, worst_identity));
    return c;
}

// ---- 4: quartic attraction degeneracy -----------------------------------

Check quartic_degeneracy() {
    Check c;
    double worst_exact = 0.0;
    double worst_proxy = 0.0;
    for (int n : {2, 3}) {
        const Kernel k(4.0, 2.0, n);
        const double target = -n / (8.0 * (n + 1.0));
        const double radius = std::sqrt(n / (2.0 * n + 2.0));
        worst_exact =
            std::max(worst_exact, std::abs(interaction_energy(k, simplex_measure(n)) - target));
        worst_exact = std::max(
            worst_exact,
            std::abs(interaction_energy(k, cross_polytope_measure(n, radius)) - target));
        worst_proxy = std::max(
            worst_proxy,
            std::abs(interaction_energy(k, shell_proxy(radius, n, 1024)) - target));
    }
    c.require(worst_exact <= 1e-12, fmt("simplex/cross-polytope energy, worst %.3g", worst_exact));
    c.require(worst_proxy <= 1e-5, fmt("1024-point proxy energy, worst %.3g", worst_proxy));

    const double R = 1.0 / std::sqrt(3.0);
    const NeutralMeasure tri_minus_square{SignedMeasure(ring_measure(3, R), ring_measure(4, R))};
    const double f4 = std::abs(f_alpha_form(tri_minus_square, 4.0));
    c.require(f4 <= 1e-12, fmt("F_4(triangle - square), |value| %.3g", f4));
    c.note(fmt("exact dev %.1e, proxy dev %.1e, F4 %.1e", worst_exact, worst_proxy, f4));
    return c;
}

// ---- 5: sign classification of the quadratic form ------------------------

Check quadratic_form_signs() {
    Check c;
    int case_id = 0;
    for (int n : {1, 2, 3}) {
        for (double alpha : {2.5, 3.0, 3.5}) {
            const SignReport rep =
                sign_classify(alpha, n, 200, derive_seed(kSeedBase, 5000 + case_id++));
            c.require(rep.min > 0.0, fmt("alpha=%.1f n=%d positive, min %.3g", alpha, n, rep.min));
        }
        for (double alpha : {0.5, 1.0, 1.5}) {
            const SignReport rep =
                sign_classify(alpha, n, 200, derive_seed(kSeedBase, 5000 + case_id++));
            c.require(rep.max < 0.0, fmt("alpha=%.1f n=%d negative, max %.3g", alpha, n, rep.max));
        }
        {
            const SignReport rep =
                sign_classify(2.0, n, 200, derive_seed(kSeedBase, 5000 + case_id++));
            const double worst = std::max(std::abs(rep.min), std::abs(rep.max));
            c.require(worst < 1e-12, fmt("alpha=2 n=%d vanishing, worst %.3g", n, worst));
        }
        {
            const SignReport rep =
                sign_classify(4.0, n, 200, derive_seed(kSeedBase, 5000 + case_id++));
            c.require(rep.min >= -1e-12, fmt("alpha=4 n=%d nonnegative, min %.3g", n, rep.min));
        }
    }

    Mat pts(1, 4);
    pts << -1.0, 1.0, -0.5, 0.5;
    Vec w(4);
    w << 0.5, 0.5, -0.5, -0.5;
    const NeutralMeasure fixed(pts, w);
    const double f3 = f_alpha_form(fixed, 3.0);
    const double f1 = f_alpha_form(fixed, 1.0);
    const double f4 = f_alpha_form(fixed, 4.0);
    c.require(std::abs(f3 - 1.0) <= 1e-12, fmt("hand value F_3, got %.15g", f3));
    c.require(std::abs(f1 + 0.5) <= 1e-12, fmt("hand value F_1, got %.15g", f1));
    c.require(std::abs(f4 - 3.375) <= 1e-12, fmt("hand value F_4, got %.15g", f4));
    c.note(fmt("hand values dev %.1e/%.1e/%.1e", std::abs(f3 - 1.0), std::abs(f1 + 0.5),
               std::abs(f4 - 3.375)));
    return c;
}

// ---- 6: direct form equals its frequency-side representation ------------

Check frequency_side_identity() {
    Check c;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        Rng rng(derive_seed(kSeedBase, 6000 + t));
        const NeutralMeasure rho = random_neutral(rng, 1);
        for (double alpha : {1.0, 2.5, 3.0, 3.5}) {
            const double direct = f_alpha_form(rho, alpha);
            const double freq = fourier_side(rho, alpha);
            const double rel = std::abs(freq - direct) / std::abs(direct);
            worst = std::max(worst, rel);
            if (rel > 1e-4) {
                c.require(false, fmt("trial %d alpha=%.1f rel %.3g (direct %.6g, freq %.6g)", t,
                                     alpha, rel, direct, freq));
            }
        }
    }
    c.note(fmt("worst rel %.2e over 80 evaluations", worst));
    return c;
}

// ---- 7: steady rings -----------------------------------------------------

Check steady_rings() {
    Check c;
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    double worst42 = 0.0;
    for (int k = 3; k <= 12; ++k) {
        const KernelParams p(4.0, 2.0, 2);
        const double rk = ring_steady_radius(k, p);
        worst42 = std::max(worst42, std::abs(rk - inv_sqrt3));
        const StationarityReport rep =
            euler_lagrange_residual(Kernel(p), ring_measure(k, rk));
        c.require(rep.grad_max < 1e-10, fmt("(4,2) k=%d grad_max %.3g", k, rep.grad_max));
    }
    c.require(worst42 <= 1e-10, fmt("(4,2) radius vs 1/sqrt(3), worst %.3g", worst42));

    const KernelParams p32(3.0, 2.0, 2);
    const double target = 3.0 * M_PI / 16.0;
    double err_prev = std::numeric_limits<double>::infinity();
    std::string gaps;
    for (int k : {8, 16, 32}) {
        const double rk = ring_steady_radius(k, p32);
        const double err = std::abs(rk - target);
        c.require(err < err_prev, fmt("(3,2) k=%d error %.3g not below %.3g", k, err, err_prev));
        err_prev = err;
        const StationarityReport rep = euler_lagrange_residual(Kernel(p32), ring_measure(k, rk));
        c.require(rep.grad_max < 1e-10, fmt("(3,2) k=%d grad_max %.3g", k, rep.grad_max));
        c.require(rep.exterior_min_gap < 0.0,
                  fmt("(3,2) k=%d gap %.3g not negative", k, rep.exterior_min_gap));
        gaps += fmt(" %.2e", rep.exterior_min_gap);
    }
    c.note(fmt("(4,2) worst dev %.1e, (3,2) final err %.2e, gaps%s", worst42, err_prev,
               gaps.c_str()));
    return c;
}

// ---- 8: gradient flow dissipation and confinement ------------------------

Check flow_dissipation() {
    Check c;
    {
        const Kernel k(3.0, 2.0, 2);
        const FlowTrajectory traj = evolve(ring_measure(64, 0.9), k, 100.0, 0.01, 1e-8);
        const FlowState& last = traj.states.back();
        c.require(last.force_residual < 1e-8,
                  fmt("ring flow residual %.3g did not reach 1e-8", last.force_residual));

        const Vec com = center_of_mass(last.measure);
        double radius = 0.0;
        for (Index i = 0; i < last.measure.size(); ++i)
            radius = std::max(radius, (last.measure.point(i) - com).norm());
        const double want = ring_steady_radius(64, KernelParams(3.0, 2.0, 2));
        c.require(std::abs(radius - want) <= 5e-3,
                  fmt("final radius %.6f vs steady %.6f", radius, want));

        bool monotone = true;
        for (std::size_t i = 1; i < traj.states.size(); ++i)
            monotone = monotone &&
                       traj.states[i].energy <= traj.states[i - 1].energy + 1e-10;
        c.require(monotone, "ring flow energy nonincreasing");

        const Vec drift = com - center_of_mass(traj.states.front().measure);
        c.require(drift.norm() < 1e-9, fmt("ring flow center drift %.3g", drift.norm()));
        c.note(fmt("ring radius dev %.2e in %ld steps", std::abs(radius - want),
                   traj.policy.steps));
    }
    {
        const Kernel k(3.5, 2.0, 2);
        double worst_diameter = 0.0;
        for (int t = 0; t < 10; ++t) {
            Rng rng(derive_seed(kSeedBase, 8000 + t));
            Mat pts(2, 64);
            for (int i = 0; i < 64; ++i) {
                pts(0, i) = rng.uniform(0.0, 1.5);
                pts(1, i) = rng.uniform(0.0, 1.5);
            }
            const FlowTrajectory traj = evolve(DiscreteMeasure(pts), k, 60.0, 0.01, 1e-6, 50);
            worst_diameter =
                std::max(worst_diameter, support_diameter(traj.states.back().measure));
        }
        c.require(worst_diameter <= std::exp(0.5),
                  fmt("cloud diameter %.4f above e^(1/2)", worst_diameter));
        c.note(fmt("worst cloud diameter %.4f (bound %.4f)", worst_diameter, std::exp(0.5)));
    }
    return c;
}

// ---- 9: the two-atom minimizer in 1D -------------------------------------

Check two_atom_minimizer() {
    Check c;
    const Kernel k(3.5, 2.0, 1);
    Mat atoms(1, 2);
    atoms << -0.5, 0.5;
    const DiscreteMeasure mu_star{Mat(atoms)};
    const StationarityReport rep = euler_lagrange_residual(k, mu_star);
    c.require(rep.grad_max < 1e-12, fmt("grad_max %.3g", rep.grad_max));
    c.require(rep.exterior_min_gap >= 0.0, fmt("exterior gap %.3g", rep.exterior_min_gap));

    // Same measure written with 8 atoms so even perturbations can move mass
    // fractions independently.
    Mat base(1, 8);
    base << 0.5, 0.5, 0.5, 0.5, -0.5, -0.5, -0.5, -0.5;
    const double e_base = interaction_energy(k, DiscreteMeasure(Mat(base)));
    double min_excess = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 20; ++t) {
        Rng rng(derive_seed(kSeedBase, 9000 + t));
        Mat pts(1, 8);
        for (int j = 0; j < 4; ++j) {
            double move = 0.0;
            while (std::abs(move) < 1e-3) move = rng.uniform(-0.05, 0.05);
            pts(0, j) = 0.5 + move;
            pts(0, 4 + j) = -(0.5 + move);
        }
        const double excess = interaction_energy(k, DiscreteMeasure(std::move(pts))) - e_base;
        min_excess = std::min(min_excess, excess);
    }
    c.require(min_excess > 1e-12, fmt("smallest energy excess %.3g", min_excess));
    c.note(fmt("grad %.1e, gap %.2e, min excess %.3g", rep.grad_max, rep.exterior_min_gap,
               min_excess));
    return c;
}

// ---- 10: perturbations of the shell stay near the minimizing family ------

Check stability_sweep() {
    Check c;
    const KernelParams p(3.0, 2.0, 2);
    const Kernel k(p);
    const double r_star = steady_shell_radius(p).root;
    const DiscreteMeasure proxy = shell_proxy(r_star, 2, 64);
    const double offset = 2.0 * std::sin(M_PI / 128.0) * r_star;

    Rng rng(derive_seed(kSeedBase, 10000));
    std::vector<Vec> dirs;
    for (int i = 0; i < 64; ++i) dirs.push_back(rng.unit_vector(2));

    std::string envelope;
    double prev_sup = 0.0;
    bool monotone = true;
    for (double delta : {0.01, 0.02, 0.05}) {
        Mat pts(2, 64);
        for (int i = 0; i < 64; ++i) pts.col(i) = proxy.point(i) + delta * dirs[i];
        const FlowTrajectory traj = evolve(DiscreteMeasure(std::move(pts)), k, 30.0, 5e-3, 1e-9, 10);
        double sup = 0.0;
        for (const FlowState& s : traj.states)
            sup = std::max(sup, distance_to_minimizer(s.measure, k, 3.0));
        const double bound = 5.0 * delta + offset;
        c.require(sup <= bound, fmt("delta=%.2f sup %.5f above bound %.5f", delta, sup, bound));
        monotone = monotone && sup >= prev_sup;
        prev_sup = sup;
        envelope += fmt(" %.4f<=%.4f", sup, bound);
    }
    c.note(fmt("envelope%s, monotone %s", envelope.c_str(), monotone ? "yes" : "no"));
    return c;
}

// ---- 11: transport solver cross-checks -----------------------------------

Check transport_checks() {
    Check c;
    bool all_equal = true;
    for (int t = 0; t < 64; ++t) {
        Rng rng(derive_seed(kSeedBase, 11000 + t));
        const int N = 2 + static_cast<int>(rng.raw() % 63);
        Mat a(1, N), b(1, N);
        for (int i = 0; i < N; ++i) {
            a(0, i) = rng.uniform(-2.0, 2.0);
            b(0, i) = rng.uniform(-2.0, 2.0);
        }
        const DiscreteMeasure ma{Mat(a)}, mb{Mat(b)};
        const double p = 1.0 + t % 3;
        const double sorted = wasserstein_p(ma, mb, p);
        const double assigned = detail::wasserstein_p_assignment(ma, mb, p);
        if (sorted != assigned) {
            all_equal = false;
            c.require(false, fmt("trial %d N=%d p=%.0f sorted %.17g != assigned %.17g", t, N, p,
                                 sorted, assigned));
        }
    }
    if (all_equal) c.note("64/64 sorted-vs-assignment exact matches");

    const double d = wasserstein_inf(ring_measure(4, 1.0), shell_proxy(1.0, 2, 4096));
    const double want = 2.0 * std::sin(M_PI / 8.0);
    c.require(std::abs(d - want) <= 1e-3, fmt("bottleneck %.6f vs chord %.6f", d, want));
    c.note(fmt("bottleneck dev %.2e", std::abs(d - want)));
    return c;
}

} // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& log) {
    struct Entry {
        int index;
        const char* name;
        double budget_seconds;
        std::function<Check()> run;
    };
    const Entry entries[] = {
        {1, "shell radius consistency", 5.0, radius_consistency},
        {2, "sphere force integral signs", 5.0, force_integral_signs},
        {3, "third radial derivative positivity", 30.0, third_derivative},
        {4, "quartic degenerate minimizers", 5.0, quartic_degeneracy},
        {5, "quadratic form sign classification", 10.0, quadratic_form_signs},
        {6, "frequency-side identity", 30.0, frequency_side_identity},
        {7, "steady rings", 20.0, steady_rings},
        {8, "gradient flow dissipation", 60.0, flow_dissipation},
        {9, "two-atom minimizer stability", 5.0, two_atom_minimizer},
        {10, "stability sweep", 120.0, stability_sweep},
        {11, "transport cross-checks", 20.0, transport_checks},
    };

    std::vector<CriterionResult> results;
    for (const Entry& entry : entries) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        r.index = entry.index;
        r.name = entry.name;
        try {
            Check c = entry.run();
            r.passed = c.ok;
            r.detail = c.detail.str();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.seconds > entry.budget_seconds) {
            r.passed = false;
            r.detail += fmt("; over %.0f s budget", entry.budget_seconds);
        }
        log << fmt("[%2d] %s  %-36s (%6.2f s)  %s\n", r.index, r.passed ? "PASS" : "FAIL",
                   r.name.c_str(), r.seconds, r.detail.c_str());
        results.push_back(std::move(r));
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results)
        if (!r.passed) return false;
    return !results.empty();
}

} // namespace shellmin
