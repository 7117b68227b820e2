#include "shellmin/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace shellmin {

namespace {

constexpr double kEnergyRiseTol = 1e-10;
constexpr double kDtFloor = 1e-15;

// Symmetric pair sweep: each pair contributes equal and opposite force
// terms, so the center of mass stays put to rounding and the inner loop
// runs allocation-free (the per-pair separation reuses one buffer).
Mat forces_of(const Kernel& k, const Mat& pts, const Vec& w) {
    const Index N = pts.cols();
    const double pa = k.params.alpha - 2.0;
    const double pb = k.params.beta - 2.0;
    Mat F = Mat::Zero(pts.rows(), N);
    Vec sep(pts.rows());
    for (Index i = 0; i < N; ++i) {
        for (Index j = i + 1; j < N; ++j) {
            sep = pts.col(i) - pts.col(j);
            const double r = sep.norm();
            if (r == 0.0) {
                if (k.params.beta < 2.0)
                    throw singularity_error("forces: coincident points with beta < 2");
                continue;
            }
            const double scale = radial_power(r, pa) - radial_power(r, pb);
            F.col(i) -= (w[j] * scale) * sep;
            F.col(j) += (w[i] * scale) * sep;
        }
    }
    return F;
}

double residual_of(const Mat& F) {
    double r = 0.0;
    for (Index i = 0; i < F.cols(); ++i) r = std::max(r, F.col(i).norm());
    return r;
}

} // namespace

Mat particle_forces(const Kernel& k, const DiscreteMeasure& m) {
    return forces_of(k, m.points(), m.weights());
}

FlowState make_flow_state(DiscreteMeasure m, const Kernel& k, double time) {
    const double energy = interaction_energy(k, m);
    const double residual = residual_of(particle_forces(k, m));
    return FlowState{std::move(m), time, energy, residual};
}

FlowState step_adaptive(const FlowState& s, const Kernel& k, double& dt) {
    const Mat& x0 = s.measure.points();
    const Vec& w = s.measure.weights();
    const Mat k1 = forces_of(k, x0, w);
    while (true) {
        if (dt < kDtFloor)
            throw step_collapse_error("step: dt collapsed below 1e-15 under the energy watchdog");
        const Mat k2 = forces_of(k, x0 + 0.5 * dt * k1, w);
        const Mat k3 = forces_of(k, x0 + 0.5 * dt * k2, w);
        const Mat k4 = forces_of(k, x0 + dt * k3, w);
        Mat x1 = x0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        DiscreteMeasure next(std::move(x1), w);
        const double energy = interaction_energy(k, next);
        if (energy - s.energy > kEnergyRiseTol) {
            dt *= 0.5;
            continue;
        }
        const double residual = residual_of(forces_of(k, next.points(), w));
        return FlowState{std::move(next), s.time + dt, energy, residual};
    }
}

FlowState step(const FlowState& s, const Kernel& k, double dt) {
    return step_adaptive(s, k, dt);
}

FlowTrajectory evolve(const DiscreteMeasure& m, const Kernel& k, double t_end, double dt0,
                      double residual_tol, Index record_stride) {
    if (!(dt0 > 0.0)) throw std::invalid_argument("evolve: dt0 must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("evolve: t_end must be positive");
    if (record_stride < 1) throw std::invalid_argument("evolve: record_stride must be >= 1");

    FlowTrajectory out{{}, k.params, {}};
    out.policy.dt0 = dt0;
    out.policy.t_end = t_end;
    out.policy.residual_tol = residual_tol;
    out.policy.record_stride = record_stride;

    FlowState state = make_flow_state(m, k);
    out.states.push_back(state);
    double dt = dt0;
    while (state.force_residual >= residual_tol && state.time < t_end) {
        const double dt_before = dt;
        state = step_adaptive(state, k, dt);
        if (dt < dt_before)
            out.policy.rejections += static_cast<long>(std::round(std::log2(dt_before / dt)));
        ++out.policy.steps;
        if (out.policy.steps % record_stride == 0) out.states.push_back(state);
    }
    if (out.states.back().time != state.time) out.states.push_back(state);
    out.policy.dt_final = dt;
    return out;
}

void write_csv(const FlowTrajectory& t, std::ostream& out) {
    out << "time,energy,force_residual\n";
    char line[128];
    for (const FlowState& s : t.states) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", s.time, s.energy,
                      s.force_residual);
        out << line;
    }
}

} // namespace shellmin
