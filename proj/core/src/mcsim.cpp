#include "lfe/mcsim.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "lfe/errors.hpp"
#include "lfe/rng.hpp"
#include "lfe/symcov.hpp"
#include "quadrature.hpp"

namespace lfe {

namespace {

// Compensated per-batch accumulator for the three distance estimates.
struct KahanTriple {
    std::array<double, 3> sum{};
    std::array<double, 3> comp{};
    std::int64_t count = 0;

    void add(const std::array<double, 3>& v) {
        for (int r = 0; r < 3; ++r) {
            const double y = v[r] - comp[r];
            const double t = sum[r] + y;
            comp[r] = (t - sum[r]) - y;
            sum[r] = t;
        }
        ++count;
    }
};

void validate_config(const SimConfig& cfg) {
    if (cfg.paths < 1) throw DomainError("paths must be >= 1");
    if (!(std::isfinite(cfg.dt) && cfg.dt > 0.0))
        throw DomainError("dt must be positive and finite");
    if (!(std::isfinite(cfg.t_end) && cfg.t_end > 0.0))
        throw DomainError("t_end must be positive and finite");
    if (cfg.batches < 1) throw DomainError("batches must be >= 1");
    if (cfg.threads < 0) throw DomainError("threads must be >= 0");
}

std::int64_t resolve_steps(const SimConfig& cfg) {
    const std::int64_t steps = std::llround(cfg.t_end / cfg.dt);
    if (steps < 1 || std::abs(static_cast<double>(steps) * cfg.dt - cfg.t_end) >
                         1e-9 * std::max(1.0, cfg.t_end))
        throw DomainError("t_end must be a positive integer multiple of dt");
    return steps;
}

// Runs path_fn for every path index, batched for standard errors. Batches
// cover contiguous index ranges and are merged in index order, so estimates
// do not depend on how many worker threads ran them.
template <class PathFn>
SimEnsemble run_ensemble(const SimConfig& cfg, int system_size, PathFn&& path_fn) {
    const std::int64_t paths = cfg.paths;
    const int n_batches = static_cast<int>(std::min<std::int64_t>(cfg.batches, paths));
    std::vector<KahanTriple> acc(static_cast<std::size_t>(n_batches));

    auto run_batch = [&](int b) {
        const std::int64_t lo = paths * b / n_batches;
        const std::int64_t hi = paths * (b + 1) / n_batches;
        for (std::int64_t path = lo; path < hi; ++path)
            acc[static_cast<std::size_t>(b)].add(path_fn(path));
    };

    int threads = cfg.threads == 0
                      ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))
                      : cfg.threads;
    threads = std::min(threads, n_batches);
    if (threads <= 1) {
        for (int b = 0; b < n_batches; ++b) run_batch(b);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (int b = next.fetch_add(1); b < n_batches; b = next.fetch_add(1))
                    run_batch(b);
            });
        for (auto& th : pool) th.join();
    }

    SimEnsemble out;
    out.config = cfg;
    out.system_size = system_size;
    out.paths_done = paths;
    out.by_distance.resize(3);
    for (int r = 0; r < 3; ++r) {
        double total = 0.0;
        double comp = 0.0;
        for (const auto& a : acc) {
            const double y = a.sum[r] - comp;
            const double t = total + y;
            comp = (t - total) - y;
            total = t;
        }
        out.by_distance[static_cast<std::size_t>(r)].estimate =
            total / static_cast<double>(paths);
        if (n_batches >= 2) {
            double mean = 0.0;
            for (const auto& a : acc) mean += a.sum[r] / static_cast<double>(a.count);
            mean /= static_cast<double>(n_batches);
            double ss = 0.0;
            for (const auto& a : acc) {
                const double d = a.sum[r] / static_cast<double>(a.count) - mean;
                ss += d * d;
            }
            out.by_distance[static_cast<std::size_t>(r)].std_error = std::sqrt(
                ss / (static_cast<double>(n_batches) * static_cast<double>(n_batches - 1)));
        } else {
            out.by_distance[static_cast<std::size_t>(r)].std_error =
                std::numeric_limits<double>::quiet_NaN();
        }
    }
    return out;
}

// Real Fourier diagonalization of the cycle drift. Columns of u are the
// orthonormal eigenvectors; mode l has drift eigenvalue alpha + beta cos(2 pi l / n).
void cycle_exact_matrices(int n, double alpha, double beta, double dt,
                          Eigen::MatrixXd& phi, Eigen::MatrixXd& noise) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const double amp = std::sqrt(2.0 / static_cast<double>(n));

    Eigen::MatrixXd u(n, n);
    Eigen::VectorXd decay(n), gain(n);
    auto set_mode = [&](int col, double g) {
        decay(col) = std::exp(-g * dt);
        // Var of the one-step noise: integral of e^{-2gs} * 2 ds over [0, dt].
        gain(col) = std::sqrt(2.0 * dt * detail::one_minus_exp_over(2.0 * g * dt));
    };

    int col = 0;
    for (int l = 0; 2 * l <= n; ++l) {
        const double g = alpha + beta * std::cos(two_pi * l / n);
        if (l == 0) {
            u.col(col).setConstant(inv_sqrt_n);
            set_mode(col++, g);
        } else if (2 * l == n) {
            for (int j = 0; j < n; ++j) u(j, col) = (j % 2 == 0) ? inv_sqrt_n : -inv_sqrt_n;
            set_mode(col++, g);
        } else {
            for (int j = 0; j < n; ++j) {
                const double theta = two_pi * l * j / n;
                u(j, col) = amp * std::cos(theta);
                u(j, col + 1) = amp * std::sin(theta);
            }
            set_mode(col, g);
            set_mode(col + 1, g);
            col += 2;
        }
    }

    phi = u * decay.asDiagonal() * u.transpose();
    noise = u * gain.asDiagonal() * u.transpose();
}

} // namespace

SimEnsemble simulate_cycle(const GlfeParams& p, const SimConfig& cfg) {
    make_glfe_params(p.alpha, p.beta, p.var0);
    validate_config(cfg);
    if (cfg.n < 4 || cfg.n % 2 != 0)
        throw DomainError("cycle size n must be even and at least 4");
    const std::int64_t steps = resolve_steps(cfg);
    const int n = cfg.n;
    const double two_pi = 2.0 * std::numbers::pi;

    Eigen::MatrixXd phi, noise;
    if (cfg.scheme == Scheme::exact_gaussian) {
        cycle_exact_matrices(n, p.alpha, p.beta, cfg.dt, phi, noise);
    } else {
        for (int l = 0; l < n; ++l) {
            const double g = p.alpha + p.beta * std::cos(two_pi * l / n);
            if (std::abs(1.0 - cfg.dt * g) >= 1.0)
                throw StabilityError("Euler step is unstable for the cycle drift; reduce dt");
        }
    }

    const double sqrt_var0 = std::sqrt(p.var0);
    const double sqrt_2dt = std::sqrt(2.0 * cfg.dt);
    const double half_beta = 0.5 * p.beta;
    const double alpha = p.alpha;
    const bool exact = cfg.scheme == Scheme::exact_gaussian;

    auto path_fn = [&](std::int64_t path) {
        NormalStream ns(cfg.seed, static_cast<std::uint64_t>(path));
        Eigen::VectorXd z(n);
        for (int j = 0; j < n; ++j) z(j) = sqrt_var0 * ns.next();
        if (exact) {
            Eigen::VectorXd xi(n);
            for (std::int64_t k = 0; k < steps; ++k) {
                for (int j = 0; j < n; ++j) xi(j) = ns.next();
                z = phi * z + noise * xi;
            }
        } else {
            Eigen::VectorXd znew(n);
            for (std::int64_t k = 0; k < steps; ++k) {
                for (int j = 0; j < n; ++j) {
                    const int jm = j == 0 ? n - 1 : j - 1;
                    const int jp = j + 1 == n ? 0 : j + 1;
                    znew(j) = z(j) -
                              cfg.dt * (alpha * z(j) + half_beta * (z(jm) + z(jp))) +
                              sqrt_2dt * ns.next();
                }
                z.swap(znew);
            }
        }
        const std::span<const double> zs(z.data(), static_cast<std::size_t>(n));
        return std::array<double, 3>{cycle_pair_average(zs, 0), cycle_pair_average(zs, 1),
                                     cycle_pair_average(zs, 2)};
    };
    return run_ensemble(cfg, n, path_fn);
}

SimEnsemble simulate_gmlfe(const CovTrajectory& traj, const SimConfig& cfg) {
    validate_config(cfg);
    if (cfg.scheme == Scheme::exact_gaussian)
        throw DomainError(
            "exact_gaussian sampling needs a time-invariant generator; "
            "the star flow supports the euler scheme only");
    const std::int64_t steps = resolve_steps(cfg);
    if (traj.points.empty()) throw DomainError("trajectory is empty");
    if (cfg.t_end > traj.t_max() + 1e-12 * std::max(1.0, traj.t_max()))
        throw DomainError("t_end exceeds the trajectory coverage");

    const int kappa = traj.kappa;
    const int d = 1 + kappa;
    const double alpha = traj.alpha;
    const double beta = traj.beta;
    const double dt = cfg.dt;

    // Freeze the drift schedule at step starts and check explicit-scheme
    // stability of every frozen drift. The drift acts as alpha_tilde on
    // leaf-difference directions and as the 2x2 block
    // [[alpha, beta/sqrt(kappa)], [sqrt(kappa) beta_tilde, alpha_tilde]]
    // on the (center, leaf-mean) plane.
    std::vector<double> at(static_cast<std::size_t>(steps));
    std::vector<double> bt(static_cast<std::size_t>(steps));
    for (std::int64_t k = 0; k < steps; ++k) {
        const double tk = std::min(static_cast<double>(k) * dt, traj.t_max());
        const TildeCoeffs tc = tilde_coeffs(marginal_at(traj, tk), alpha, beta);
        at[static_cast<std::size_t>(k)] = tc.alpha_tilde;
        bt[static_cast<std::size_t>(k)] = tc.beta_tilde;

        const double tau = alpha + tc.alpha_tilde;
        const double det = alpha * tc.alpha_tilde - beta * tc.beta_tilde;
        const double disc = tau * tau - 4.0 * det;
        bool ok = std::abs(1.0 - dt * tc.alpha_tilde) < 1.0;
        if (disc >= 0.0) {
            const double root = std::sqrt(disc);
            ok = ok && std::abs(1.0 - dt * 0.5 * (tau + root)) < 1.0 &&
                 std::abs(1.0 - dt * 0.5 * (tau - root)) < 1.0;
        } else {
            const double re = 1.0 - dt * 0.5 * tau;
            ok = ok && re * re + dt * dt * 0.25 * (-disc) < 1.0;
        }
        if (!ok)
            throw StabilityError("Euler step is unstable for the star drift; reduce dt");
    }

    Eigen::LLT<Eigen::MatrixXd> llt(dense(traj.points.front()));
    if (llt.info() != Eigen::Success)
        throw DomainError("initial covariance is not positive definite");
    const Eigen::MatrixXd chol = llt.matrixL();

    const double sqrt_2dt = std::sqrt(2.0 * dt);
    const double beta_over_kappa = beta / static_cast<double>(kappa);

    auto path_fn = [&](std::int64_t path) {
        NormalStream ns(cfg.seed, static_cast<std::uint64_t>(path));
        Eigen::VectorXd x(d), xi(d), xnew(d);
        for (int i = 0; i < d; ++i) xi(i) = ns.next();
        x = chol * xi;
        for (std::int64_t k = 0; k < steps; ++k) {
            const double a_t = at[static_cast<std::size_t>(k)];
            const double b_t = bt[static_cast<std::size_t>(k)];
            double leaf_sum = 0.0;
            for (int v = 1; v < d; ++v) leaf_sum += x(v);
            xnew(0) = x(0) - dt * (alpha * x(0) + beta_over_kappa * leaf_sum) +
                      sqrt_2dt * ns.next();
            for (int v = 1; v < d; ++v)
                xnew(v) = x(v) - dt * (a_t * x(v) + b_t * x(0)) + sqrt_2dt * ns.next();
            x.swap(xnew);
        }
        double m0 = 0.0;
        for (int i = 0; i < d; ++i) m0 += x(i) * x(i);
        m0 /= static_cast<double>(d);
        double m1 = 0.0;
        for (int v = 1; v < d; ++v) m1 += x(0) * x(v);
        m1 /= static_cast<double>(kappa);
        double m2 = 0.0;
        if (kappa >= 2) {
            for (int v = 1; v < d; ++v)
                for (int w = v + 1; w < d; ++w) m2 += x(v) * x(w);
            m2 *= 2.0 / (static_cast<double>(kappa) * static_cast<double>(kappa - 1));
        }
        return std::array<double, 3>{m0, m1, m2};
    };
    return run_ensemble(cfg, d, path_fn);
}

PairStat empirical_neighborhood_cov(const SimEnsemble& e, int distance) {
    if (distance < 0 || distance >= static_cast<int>(e.by_distance.size()))
        throw std::out_of_range("distance must be 0, 1, or 2");
    return e.by_distance[static_cast<std::size_t>(distance)];
}

double cycle_pair_average(std::span<const double> z, int distance) {
    const int n = static_cast<int>(z.size());
    if (n == 0) throw DomainError("state vector is empty");
    if (distance < 0 || distance > n / 2)
        throw std::out_of_range("distance exceeds the cycle diameter");
    double sum = 0.0;
    double comp = 0.0;
    for (int j = 0; j < n; ++j) {
        int k = j + distance;
        if (k >= n) k -= n;
        const double y = z[static_cast<std::size_t>(j)] * z[static_cast<std::size_t>(k)] - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum / static_cast<double>(n);
}

} // namespace lfe
