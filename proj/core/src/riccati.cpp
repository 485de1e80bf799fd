#include "lfe/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lfe {

namespace {

SymCov axpy(const SymCov& y, double h, const SymCov& d) {
    return SymCov{y.kappa, y.a + h * d.a, y.b + h * d.b, y.c + h * d.c};
}

SymCov rk4_step(const SymCov& y, double h, double alpha, double beta) {
    const SymCov k1 = riccati_rhs_F(y, alpha, beta);
    const SymCov k2 = riccati_rhs_F(axpy(y, 0.5 * h, k1), alpha, beta);
    const SymCov k3 = riccati_rhs_F(axpy(y, 0.5 * h, k2), alpha, beta);
    const SymCov k4 = riccati_rhs_F(axpy(y, h, k3), alpha, beta);
    return SymCov{y.kappa,
                  y.a + h / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a),
                  y.b + h / 6.0 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b),
                  y.c + h / 6.0 * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c)};
}

double max_abs_diff(const SymCov& x, const SymCov& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b),
                     std::abs(x.c - y.c)});
}

void validate_config(const IntegratorConfig& cfg) {
    if (!(cfg.initial_step > 0.0) || !(cfg.abs_tol > 0.0)
        || !(cfg.grid_spacing > 0.0) || cfg.max_halvings < 0) {
        throw DomainError("integrate: invalid integrator config");
    }
}

} // namespace

CovTrajectory integrate(int kappa, double alpha, double beta,
                        const SymCov& sigma0, double t_max,
                        const IntegratorConfig& cfg) {
    validate_config(cfg);
    if (kappa != sigma0.kappa) {
        throw DomainError("integrate: kappa does not match sigma0");
    }
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        throw DomainError("integrate: alpha, beta must be finite");
    }
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw DomainError("integrate: t_max must be finite and > 0");
    }
    if (!is_strictly_pd(sigma0)) {
        throw DomainError("integrate: sigma0 must be strictly PD");
    }

    const auto cells = static_cast<std::size_t>(
        std::max(1.0, std::ceil(t_max / cfg.grid_spacing - 1e-9)));

    CovTrajectory traj;
    traj.kappa = kappa;
    traj.alpha = alpha;
    traj.beta = beta;
    traj.times.reserve(cells + 1);
    traj.points.reserve(cells + 1);
    traj.slopes.reserve(cells + 1);
    traj.times.push_back(0.0);
    traj.points.push_back(sigma0);
    traj.slopes.push_back(riccati_rhs_F(sigma0, alpha, beta));

    SymCov y = sigma0;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const double t0 = t_max * static_cast<double>(cell) / cells;
        const double t1 = t_max * static_cast<double>(cell + 1) / cells;
        double s = t0;
        double h = std::min(cfg.initial_step, t1 - t0);
        int halvings = 0;
        while (s < t1) {
            // stretch the final substep (up to 1.5h) instead of leaving a
            // sliver; the doubling estimate still controls its error
            double h_eff = t1 - s;
            const bool last = h_eff <= 1.5 * h;
            if (!last) {
                h_eff = h;
            }
            const SymCov full = rk4_step(y, h_eff, alpha, beta);
            const SymCov half = rk4_step(
                rk4_step(y, 0.5 * h_eff, alpha, beta), 0.5 * h_eff, alpha,
                beta);
            if (max_abs_diff(full, half) > 15.0 * cfg.abs_tol) {
                if (halvings >= cfg.max_halvings) {
                    throw IntegrationError(
                        "integrate: tolerance not met after max halvings near t="
                        + std::to_string(s));
                }
                h = 0.5 * h_eff;
                ++halvings;
                continue;
            }
            y = half;
            s = last ? t1 : s + h_eff;
            if (!is_strictly_pd(y)) {
                throw IntegrationError(
                    "integrate: positivity lost near t=" + std::to_string(s));
            }
        }
        traj.times.push_back(t1);
        traj.points.push_back(y);
        traj.slopes.push_back(riccati_rhs_F(y, alpha, beta));
    }
    return traj;
}

SymCov marginal_at(const CovTrajectory& traj, double t) {
    if (traj.times.size() < 2) {
        throw std::out_of_range("marginal_at: empty trajectory");
    }
    const double t_end = traj.times.back();
    const double slack = 1e-12 * std::max(1.0, t_end);
    if (t < -slack || t > t_end + slack) {
        throw std::out_of_range("marginal_at: t=" + std::to_string(t)
                                + " outside [0, " + std::to_string(t_end)
                                + "]");
    }
    const double tc = std::clamp(t, 0.0, t_end);

    const auto it =
        std::upper_bound(traj.times.begin(), traj.times.end(), tc);
    std::size_t hi = static_cast<std::size_t>(it - traj.times.begin());
    hi = std::min(std::max<std::size_t>(hi, 1), traj.times.size() - 1);
    const std::size_t lo = hi - 1;

    if (std::abs(tc - traj.times[lo]) <= slack) {
        return traj.points[lo];
    }
    if (std::abs(tc - traj.times[hi]) <= slack) {
        return traj.points[hi];
    }

    const double h = traj.times[hi] - traj.times[lo];
    const double u = (tc - traj.times[lo]) / h;
    const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
    const double h10 = u * (1.0 - u) * (1.0 - u);
    const double h01 = u * u * (3.0 - 2.0 * u);
    const double h11 = u * u * (u - 1.0);
    const SymCov& p0 = traj.points[lo];
    const SymCov& p1 = traj.points[hi];
    const SymCov& m0 = traj.slopes[lo];
    const SymCov& m1 = traj.slopes[hi];
    return SymCov{traj.kappa,
                  h00 * p0.a + h * h10 * m0.a + h01 * p1.a + h * h11 * m1.a,
                  h00 * p0.b + h * h10 * m0.b + h01 * p1.b + h * h11 * m1.b,
                  h00 * p0.c + h * h10 * m0.c + h01 * p1.c + h * h11 * m1.c};
}

double gamma_drift(const CovTrajectory& traj, double t, double x, double y) {
    const TildeCoeffs tc =
        tilde_coeffs(marginal_at(traj, t), traj.alpha, traj.beta);
    return tc.alpha_tilde * x + tc.beta_tilde * y;
}

double stationary_residual(const SymCov& s, double alpha, double beta) {
    const SymCov f = riccati_rhs_F(s, alpha, beta);
    return std::max({std::abs(f.a), std::abs(f.b), std::abs(f.c)});
}

} // namespace lfe
