#pragma once

#include "lfe/symcov.hpp"

namespace lfe {

/// Coefficients of the two-star exact flow and the n-cycle system: drift
/// parameters (alpha, beta) and the initial per-vertex variance var0.
struct GlfeParams {
    double alpha = 1.0;
    double beta = 0.0;
    double var0 = 1.0;
};

/// Validating constructor: var0 > 0, all entries finite.
GlfeParams make_glfe_params(double alpha, double beta, double var0);

/// Modified Bessel function of the first kind, integral normalization
/// I_r(y) = int_0^1 cos(r pi x) exp(y cos(pi x)) dx. Power series for
/// y <= 15, adaptive Simpson beyond; relative error <= 1e-12.
/// Domain r in {0, 1, 2}, y >= 0.
double bessel_i(int r, double y);

/// Power-series evaluation sum_m (y/2)^(2m+r) / (m! (m+r)!), any r >= 0.
double bessel_i_series(int r, double y);

/// Direct adaptive-Simpson evaluation of the defining integral, any r >= 0.
double bessel_i_quadrature(int r, double y);

/// Time-marginal covariance triple of the two-star exact flow started from
/// N(0, var0 * I):
///   sigma_r(t) = (-sgn beta)^r [var0 e^{-2 t alpha} I_r(2t|beta|)
///                + 2 int_0^t e^{-2 alpha s} I_r(2s|beta|) ds].
SymCov glfe_cov(const GlfeParams& p, double t);

/// Stationary covariance sigma_r = phi^r / delta with delta =
/// sqrt(alpha^2 - beta^2), phi = -beta / (alpha + delta). Requires
/// alpha > |beta|, else NoStationaryLawError.
SymCov stationary_pi(double alpha, double beta);

/// Scalar bound (var0 + 4/(alpha - |beta|)) e^{-2(alpha - |beta|) t}
/// dominating |sigma_r(t) - sigma_r^pi| for every r.
double glfe_tail_bound(const GlfeParams& p, double t);

/// Covariance of the n-cycle OU system at time t (or its t -> infinity
/// limit), represented spectrally: entry (j, k) is the inverse Fourier sum
/// of phi(t, lambda_l) over the cycle eigenvalues lambda_l = 2 cos(2 pi l/n).
struct CycleCov {
    int n = 4;
    double t = 0.0;
    bool stationary = false;
    GlfeParams params;
};

/// Cycle covariance at finite time t >= 0; n must be even and >= 4.
CycleCov cycle_at(int n, double t, const GlfeParams& p);

/// The t -> infinity limit, phi replaced by 1/(alpha + (beta/2) lambda).
CycleCov cycle_limit(int n, const GlfeParams& p);

/// Entry (j, k); depends only on (j - k) mod n. For the stationary limit
/// every mode must satisfy alpha + (beta/2) lambda_l > 0, else
/// NoStationaryLawError. Indices outside [0, n) -> std::out_of_range.
double cycle_cov_entry(const CycleCov& c, int j, int k);

} // namespace lfe
