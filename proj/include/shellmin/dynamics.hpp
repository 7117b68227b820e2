#pragma once

#include <iosfwd>
#include <vector>

#include "shellmin/kernel.hpp"
#include "shellmin/measure.hpp"

namespace shellmin {

// Snapshot of the particle system x_i' = -sum_j w_j grad W(x_i - x_j), the
// Lagrangian discretization of the aggregation flow. energy is the
// interaction energy of the measure at this instant; force_residual is the
// largest particle force magnitude (zero exactly at steady states).
struct FlowState {
    DiscreteMeasure measure;
    double time;
    double energy;
    double force_residual;
};

FlowState make_flow_state(DiscreteMeasure m, const Kernel& k, double time = 0.0);

// Integration bookkeeping: the step size never grows back after a watchdog
// rejection, so dt_final <= dt0.
struct StepPolicy {
    double dt0 = 0.0;
    double dt_final = 0.0;
    double t_end = 0.0;
    double residual_tol = 0.0;
    Index record_stride = 1;
    long steps = 0;
    long rejections = 0;
};

// Time-ordered states with strictly increasing times and energies
// nonincreasing within 1e-10 per accepted step.
struct FlowTrajectory {
    std::vector<FlowState> states;
    KernelParams params;
    StepPolicy policy;
};

// Particle forces F_i = -sum_{j != i} w_j grad W(x_i - x_j), columns of the
// returned matrix. Coincident particles contribute zero force for beta >= 2
// and raise a singularity error otherwise.
Mat particle_forces(const Kernel& k, const DiscreteMeasure& m);

// One classical RK4 step with an energy watchdog: a step that raises the
// energy by more than 1e-10 is rejected and retried at half the step size;
// below 1e-15 the step collapses with an error. The accepted step size is
// written back to dt.
FlowState step(const FlowState& s, const Kernel& k, double dt);
FlowState step_adaptive(const FlowState& s, const Kernel& k, double& dt);

// Integrates until t_end or force_residual < residual_tol, recording every
// record_stride-th accepted state (the initial and final states always).
// Returns a single-state trajectory when the input is already steady.
FlowTrajectory evolve(const DiscreteMeasure& m, const Kernel& k, double t_end, double dt0,
                      double residual_tol, Index record_stride = 1);

// CSV with header time,energy,force_residual.
void write_csv(const FlowTrajectory& t, std::ostream& out);

} // namespace shellmin
