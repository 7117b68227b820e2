#pragma once

#include <functional>

#include "shellmin/errors.hpp"
#include "shellmin/types.hpp"

namespace shellmin {

// Tanh-sinh (double-exponential) quadrature of f on the finite interval
// [a,b]. Node levels are doubled until successive estimates agree to
// tol * max(1, |estimate|); exceeding the node budget throws
// quadrature_error. Endpoint algebraic singularities integrable on [a,b]
// are handled by the transform itself; nodes are generated as offsets from
// the nearer endpoint so f is never evaluated exactly at a or b.
double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double tol = 1e-10, Index node_budget = Index(1) << 14);

// Composite fixed-panel 16-point Gauss-Legendre rule; used for smooth
// oscillatory integrands where the panel width is chosen from the highest
// frequency present (no endpoint singularities).
double integrate_gauss_panels(const std::function<double(double)>& f, double a, double b,
                              Index panels);

} // namespace shellmin
