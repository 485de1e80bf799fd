#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lfe/glfe.hpp"
#include "lfe/riccati.hpp"

namespace lfe {

/// euler: explicit Euler-Maruyama. exact_gaussian: transition sampled from
/// the exact OU Gaussian kernel (cycle only; bias-free in dt). Both schemes
/// consume the per-path normal stream in the same order, so runs with equal
/// seeds are coupled by common random numbers.
enum class Scheme { euler, exact_gaussian };

struct SimConfig {
    int n = 8;                  // cycle size; ignored by simulate_gmlfe
    std::int64_t paths = 1000;
    double dt = 1e-3;
    double t_end = 1.0;
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::euler;
    int batches = 32;           // standard-error batching
    int threads = 1;            // worker threads over batches; 0 = hardware
};

struct PairStat {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Finalized path ensemble: per-distance covariance estimates with batch
/// standard errors. Estimates are averages over paths and over all vertex
/// pairs at each distance, merged in fixed batch order, so the result is
/// independent of worker scheduling.
struct SimEnsemble {
    SimConfig config;
    int system_size = 0;        // n for the cycle, 1 + kappa for the star
    std::int64_t paths_done = 0;
    std::vector<PairStat> by_distance;  // distances 0, 1, 2
};

/// n-cycle OU system dZ_v = -(alpha Z_v + (beta/2)(Z_{v+1} + Z_{v-1})) dt
/// + sqrt(2) dB_v from i.i.d. N(0, var0) initial states. Explicit-scheme
/// instability (|1 - dt g| >= 1 for some drift eigenvalue g) -> StabilityError.
SimEnsemble simulate_cycle(const GlfeParams& p, const SimConfig& cfg);

/// Star SDE dX = -L(V_t) X dt + sqrt(2) dB with the drift interpolated from
/// the Riccati trajectory, started from N(0, V_0). Euler only; the
/// exact_gaussian scheme has no closed one-step kernel for a time-varying
/// generator and is rejected with DomainError.
SimEnsemble simulate_gmlfe(const CovTrajectory& traj, const SimConfig& cfg);

/// Estimate and standard error at a cycle/star distance in {0, 1, 2};
/// std_error is NaN when fewer than two batches exist.
PairStat empirical_neighborhood_cov(const SimEnsemble& e, int distance);

/// Exchangeability averaging: (1/n) sum_j z_j z_{(j+distance) mod n}.
double cycle_pair_average(std::span<const double> z, int distance);

} // namespace lfe
