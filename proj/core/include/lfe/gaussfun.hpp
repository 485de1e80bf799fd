#pragma once

#include "lfe/symcov.hpp"

namespace lfe {

/// Centered Gaussian on the 2-star with strictly PD covariance M_2(a,b,c).
/// The edge marginal is the (center, leaf) block [[a, b], [b, a]].
struct GaussOnStar {
    SymCov cov;
};

/// Validates kappa == 2 and strict positive definiteness.
GaussOnStar make_gauss_on_star(const SymCov& cov);

/// KL(num || den) = (tr(S_den^-1 S_num) - 3 + ln det S_den - ln det S_num)/2.
/// Tiny negative rounding residue is clamped to 0.
double gauss_kl(const GaussOnStar& num, const GaussOnStar& den);

/// prefactor * || S_ref^-1 S_other - I ||_F. three_halves carries the
/// constant of the underlying Gaussian TV estimate; unit matches the bare
/// Frobenius display.
enum class TvPrefactor { three_halves, unit };
double tv_upper_bound(const GaussOnStar& reference, const GaussOnStar& other,
                      TvPrefactor prefactor = TvPrefactor::three_halves);

/// KL between the 2x2 edge marginals.
double edge_marginal_kl(const GaussOnStar& num, const GaussOnStar& den);

/// Sparse free energy gap KL(nu || pi) - KL(nu_edge || pi_edge); zero at pi.
/// Requires alpha > |beta|.
double sparse_free_energy_gap(const GaussOnStar& nu, double alpha, double beta);

/// Absolute sparse free energy
///   -h(nu) + h(nu_edge) + E[U(Y_0)] + (1/2) sum_{v=+-1} E[W(Y_0 - Y_v)]
/// for the quadratic potentials U(x) = ((alpha+beta)/2) x^2 and
/// W(x) = -(beta/4) x^2, which collapses to
///   (1/2) ln(det S_edge / det S) - (1/2) ln(2 pi e) + (alpha a + beta b)/2.
/// Satisfies abs(nu) - abs(pi) == gap(nu).
double sparse_free_energy_abs(const GaussOnStar& nu, double alpha, double beta);

/// Modified Fisher information
///   E|alpha Y_0 + (beta/2)(Y_1 + Y_2) - (S^-1 Y)_0|^2
///   + 2 E|-(S^-1 Y)_1 + (S_edge^-1 (Y_0, Y_1))_1|^2,
/// evaluated as exact quadratic forms; >= 0 with unique zero at pi.
double modified_fisher(const GaussOnStar& nu, double alpha, double beta);

/// Pinsker bound sqrt(kl / 2); negative input -> DomainError.
double pinsker_tv_bound(double kl);

} // namespace lfe
