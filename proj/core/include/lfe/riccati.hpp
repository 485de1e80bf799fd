#pragma once

#include <vector>

#include "lfe/symcov.hpp"

namespace lfe {

/// Step control for the Riccati integrator: classical RK4 with step-doubling
/// error estimation. Only halving is used inside an output cell, so a run
/// with a huge tolerance marches at exactly initial_step (the scheme stays
/// a pure 4th-order method; the half-step result is not extrapolated).
struct IntegratorConfig {
    double initial_step = 0.01;
    double abs_tol = 1e-10;
    int max_halvings = 20;
    double grid_spacing = 0.01;
};

/// Covariance flow dV/dt = F(V) sampled on a uniform output grid. points
/// hold the integrator's own accepted states at the nodes (no interpolation
/// error there); slopes hold F(V) for cubic Hermite evaluation off-grid.
struct CovTrajectory {
    int kappa = 2;
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> times;
    std::vector<SymCov> points;
    std::vector<SymCov> slopes;

    double t_max() const { return times.empty() ? 0.0 : times.back(); }
};

/// Integrate dV/dt = F(V) from sigma0 over [0, t_max]. Every accepted step
/// must stay strictly PD and meet the local tolerance, else
/// IntegrationError. sigma0 must be strictly PD and carry the given kappa.
CovTrajectory integrate(int kappa, double alpha, double beta,
                        const SymCov& sigma0, double t_max,
                        const IntegratorConfig& cfg = {});

/// Covariance at any t in [0, t_max]: stored state at nodes, cubic Hermite
/// with analytic slopes between them. Out of range -> std::out_of_range.
SymCov marginal_at(const CovTrajectory& traj, double t);

/// Leaf drift coefficient pair evaluated on the trajectory:
/// alpha_tilde(V_t) x + beta_tilde(V_t) y.
double gamma_drift(const CovTrajectory& traj, double t, double x, double y);

/// Fixed-point diagnostic: max-abs component of F(S).
double stationary_residual(const SymCov& s, double alpha, double beta);

} // namespace lfe
