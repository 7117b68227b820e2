#include <cmath>
#include <sstream>

#include <doctest.h>

#include "shellmin/dynamics.hpp"
#include "shellmin/equilibria.hpp"

using namespace shellmin;

namespace {

DiscreteMeasure line_pair(double a, double b) {
    Mat pts(1, 2);
    pts << a, b;
    return DiscreteMeasure(std::move(pts));
}

} // namespace

TEST_CASE("steady configurations do not move") {
    const Kernel k(4.0, 2.0, 2);
    const DiscreteMeasure ring = ring_measure(6, 1.0 / std::sqrt(3.0));
    const FlowState s0 = make_flow_state(ring, k);
    CHECK(s0.force_residual < 1e-12);

    const FlowState s1 = step(s0, k, 0.01);
    CHECK((s1.measure.points() - ring.points()).cwiseAbs().maxCoeff() < 1e-12);

    // A residual already below tolerance yields a single-state trajectory.
    const FlowTrajectory traj = evolve(ring, k, 10.0, 0.01, 1e-8);
    CHECK(traj.states.size() == 1);
}

TEST_CASE("two particles relax to the pair equilibrium") {
    const Kernel k(4.0, 2.0, 1);
    const FlowTrajectory traj = evolve(line_pair(-1.0, 1.0), k, 40.0, 0.01, 1e-10);
    const DiscreteMeasure& final = traj.states.back().measure;

    // Equilibrium separation 1, symmetric about the (conserved) midpoint.
    CHECK(std::abs(final.point(0)(0) + 0.5) < 1e-6);
    CHECK(std::abs(final.point(1)(0) - 0.5) < 1e-6);
    CHECK(traj.states.back().force_residual < 1e-10);

    double prev = traj.states.front().energy;
    for (const FlowState& s : traj.states) {
        CHECK(s.energy <= prev + 1e-10);
        prev = s.energy;
        CHECK(std::abs(center_of_mass(s.measure)(0)) < 1e-12);
    }
}

TEST_CASE("energy watchdog halves oversized steps") {
    const Kernel k(4.0, 2.0, 1);
    const FlowTrajectory traj = evolve(line_pair(-2.0, 2.0), k, 40.0, 5.0, 1e-8);
    CHECK(traj.policy.rejections > 0);
    CHECK(traj.policy.dt_final < 5.0);
    CHECK(traj.states.back().force_residual < 1e-8);
}

TEST_CASE("argument validation and recording stride") {
    const Kernel k(4.0, 2.0, 1);
    CHECK_THROWS_AS(evolve(line_pair(0.0, 1.0), k, 1.0, -0.1, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(evolve(line_pair(0.0, 1.0), k, 0.0, 0.1, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(evolve(line_pair(0.0, 1.0), k, 1.0, 0.1, 1e-8, 0), std::invalid_argument);

    const FlowTrajectory dense = evolve(line_pair(-1.0, 1.0), k, 0.1, 0.01, 1e-14, 1);
    const FlowTrajectory sparse = evolve(line_pair(-1.0, 1.0), k, 0.1, 0.01, 1e-14, 5);
    CHECK(dense.states.size() > sparse.states.size());
    // Both trajectories end at the same state.
    CHECK(dense.states.back().time == doctest::Approx(sparse.states.back().time));
}

TEST_CASE("trajectory csv") {
    const Kernel k(4.0, 2.0, 1);
    const FlowTrajectory traj = evolve(line_pair(-1.0, 1.0), k, 0.05, 0.01, 1e-12);
    std::ostringstream out;
    write_csv(traj, out);
    CHECK(out.str().rfind("time,energy,force_residual\n", 0) == 0);
}
