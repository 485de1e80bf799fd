#pragma once

#include <Eigen/Dense>

#include "lfe/errors.hpp"

namespace lfe {

/// Point (kappa, a, b, c) of the symmetric star covariance algebra: the
/// (1+kappa)x(1+kappa) matrix a*I + b*J + c*K with diagonal a, center-leaf
/// entries b and leaf-leaf entries c. Index 0 is the center, 1..kappa the
/// leaves. Construction does not require positive definiteness.
struct SymCov {
    int kappa = 2;
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
};

/// Validating constructor. kappa < 2 or non-finite entries -> DomainError.
SymCov make_symcov(int kappa, double a, double b, double c);

/// Dense realization with index 0 = center.
Eigen::MatrixXd dense(const SymCov& s);

/// Closed-form spectrum: the leaf-difference eigenvalue a - c with
/// multiplicity kappa - 1, plus the two eigenvalues of the reduced block
/// [[a, sqrt(kappa) b], [sqrt(kappa) b, a + (kappa-1) c]].
struct StarSpectrum {
    double leaf;
    double block_lo;
    double block_hi;
};
StarSpectrum spectrum(const SymCov& s);

/// Strict positive definiteness via the closed-form spectrum, evaluated as
/// exact sign conditions: a - c > 0, a + (kappa-1)c > 0 and
/// a(a + (kappa-1)c) - kappa b^2 > 0.
bool is_strictly_pd(const SymCov& s);

struct PrecisionDet {
    Eigen::MatrixXd precision;
    double det = 0.0;
};

/// Inverse and determinant of the dense realization; the determinant uses
/// the closed-form eigenvalue product (a-c)^(kappa-1) * det(reduced block).
/// Non-PD input -> SingularError.
PrecisionDet precision_and_det(const SymCov& s);

/// Conditional-expectation functionals f = b(a-c)/(a^2-b^2) and
/// g = (ac-b^2)/(a^2-b^2). On the strictly PD set |f| <= 2 and |g| <= 1.
/// a^2 == b^2 -> SingularError.
struct CondCoeffs {
    double f;
    double g;
};
CondCoeffs fg(const SymCov& s);

/// Total drift functionals: alpha_tilde = alpha + beta(kappa-1)/kappa * f,
/// beta_tilde = beta/kappa + beta(kappa-1)/kappa * g on |a| != |b|, and
/// (0, 0) on the singular set |a| == |b|, which keeps the Riccati
/// right-hand side total.
struct TildeCoeffs {
    double alpha_tilde;
    double beta_tilde;
};
TildeCoeffs tilde_coeffs(const SymCov& s, double alpha, double beta);

/// Drift matrix L = alpha Q + alpha_tilde (I-Q) + (beta/kappa) P
/// + beta_tilde P*. Row 0 is the center drift, rows 1..kappa the leaf drift
/// gamma(x_v, x_0) = alpha_tilde x_v + beta_tilde x_0.
Eigen::MatrixXd drift_matrix_L(const SymCov& s, double alpha, double beta);

/// Riccati right-hand side F(S) = 2I - L(S)S - S L(S)* as algebra
/// components:
///   f1 = 2(1 - alpha a - beta b)
///   f2 = -[(beta/kappa + beta_tilde) a + (alpha + alpha_tilde) b
///          + beta(kappa-1)/kappa * c]
///   f3 = -2(beta_tilde b + alpha_tilde c)
/// Both L(S)S and S L(S)* contribute one copy of (beta_tilde b
/// + alpha_tilde c) to the K component, hence the factor 2 in f3.
SymCov riccati_rhs_F(const SymCov& s, double alpha, double beta);

/// The 0/1 auxiliary matrices in integer arithmetic: Q = e0 e0^T, P with
/// ones in row 0 off the diagonal, J = P + P*, K = R - I - J, R all-ones.
struct AuxMatrices {
    int kappa;
    Eigen::MatrixXi Q;
    Eigen::MatrixXi P;
    Eigen::MatrixXi J;
    Eigen::MatrixXi K;
    Eigen::MatrixXi R;
};
AuxMatrices aux_matrices(int kappa);

/// Law of one leaf given the center value x and the other leaf value y, for
/// kappa = 2: mean coeff_center * x + coeff_leaf * y and a conditioning-
/// point-independent variance.
struct ConditionalGaussian {
    double coeff_center;
    double coeff_leaf;
    double variance;
};
ConditionalGaussian conditional_gaussian(const SymCov& s);

/// Conditional exponential-integrability constant Lambda_eps for a
/// conditional Gaussian with variance sigma_cond. The rederived mode is the
/// value of the defining Gaussian integral, (2/eps) log(1/(1 - eps sigma));
/// paper_printed keeps the displayed constant with its extra 2*pi.
enum class LambdaMode { rederived, paper_printed };
double lambda_eps(double sigma_cond, double eps,
                  LambdaMode mode = LambdaMode::rederived);

} // namespace lfe
