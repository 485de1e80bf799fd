#include "lfe/symcov.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lfe {

namespace {

void require_kappa(int kappa) {
    if (kappa < 2) {
        throw DomainError("symcov: kappa must be >= 2, got "
                          + std::to_string(kappa));
    }
}

// Reduced 2x2 block [[a, sqrt(k) b], [sqrt(k) b, a + (k-1) c]] acting on
// span{center, leaf average}; the rest of the spectrum is a - c.
struct ReducedBlock {
    double diag0, diag1, off;
    double det() const { return diag0 * diag1 - off * off; }
    double trace() const { return diag0 + diag1; }
};

ReducedBlock reduced_block(const SymCov& s) {
    const double k = static_cast<double>(s.kappa);
    return {s.a, s.a + (k - 1.0) * s.c, std::sqrt(k) * s.b};
}

} // namespace

SymCov make_symcov(int kappa, double a, double b, double c) {
    require_kappa(kappa);
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
        throw DomainError("symcov: a, b, c must be finite");
    }
    return SymCov{kappa, a, b, c};
}

Eigen::MatrixXd dense(const SymCov& s) {
    const int d = 1 + s.kappa;
    Eigen::MatrixXd m(d, d);
    m.setConstant(s.c);
    m.row(0).setConstant(s.b);
    m.col(0).setConstant(s.b);
    m.diagonal().setConstant(s.a);
    return m;
}

StarSpectrum spectrum(const SymCov& s) {
    const ReducedBlock blk = reduced_block(s);
    const double mid = 0.5 * blk.trace();
    const double gap = 0.5 * (blk.diag0 - blk.diag1);
    const double rad = std::sqrt(gap * gap + blk.off * blk.off);
    return StarSpectrum{s.a - s.c, mid - rad, mid + rad};
}

bool is_strictly_pd(const SymCov& s) {
    const ReducedBlock blk = reduced_block(s);
    // Block PD <=> both diagonal entries and the determinant positive;
    // sign conditions avoid the sqrt cancellation of the eigenvalue form.
    return s.a - s.c > 0.0 && blk.diag1 > 0.0 && blk.det() > 0.0;
}

PrecisionDet precision_and_det(const SymCov& s) {
    if (!is_strictly_pd(s)) {
        throw SingularError("precision_and_det: input is not strictly PD");
    }
    PrecisionDet out;
    out.precision = dense(s).inverse();
    out.det = std::pow(s.a - s.c, s.kappa - 1) * reduced_block(s).det();
    return out;
}

CondCoeffs fg(const SymCov& s) {
    if (std::abs(s.a) == std::abs(s.b)) {
        throw SingularError("fg: singular parametrization |a| == |b|");
    }
    const double denom = (s.a - s.b) * (s.a + s.b);
    return CondCoeffs{s.b * (s.a - s.c) / denom,
                      (s.a * s.c - s.b * s.b) / denom};
}

TildeCoeffs tilde_coeffs(const SymCov& s, double alpha, double beta) {
    if (std::abs(s.a) == std::abs(s.b)) {
        return TildeCoeffs{0.0, 0.0};
    }
    const CondCoeffs cc = fg(s);
    const double k = static_cast<double>(s.kappa);
    const double w = beta * (k - 1.0) / k;
    return TildeCoeffs{alpha + w * cc.f, beta / k + w * cc.g};
}

Eigen::MatrixXd drift_matrix_L(const SymCov& s, double alpha, double beta) {
    const TildeCoeffs tc = tilde_coeffs(s, alpha, beta);
    const int d = 1 + s.kappa;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    m(0, 0) = alpha;
    m.row(0).tail(s.kappa).setConstant(beta / s.kappa);
    m.diagonal().tail(s.kappa).setConstant(tc.alpha_tilde);
    m.col(0).tail(s.kappa).setConstant(tc.beta_tilde);
    return m;
}

SymCov riccati_rhs_F(const SymCov& s, double alpha, double beta) {
    const TildeCoeffs tc = tilde_coeffs(s, alpha, beta);
    const double k = static_cast<double>(s.kappa);
    const double f1 = 2.0 * (1.0 - alpha * s.a - beta * s.b);
    const double f2 = -((beta / k + tc.beta_tilde) * s.a
                        + (alpha + tc.alpha_tilde) * s.b
                        + beta * (k - 1.0) / k * s.c);
    const double f3 = -2.0 * (tc.beta_tilde * s.b + tc.alpha_tilde * s.c);
    return SymCov{s.kappa, f1, f2, f3};
}

AuxMatrices aux_matrices(int kappa) {
    require_kappa(kappa);
    const int d = 1 + kappa;
    AuxMatrices ax;
    ax.kappa = kappa;
    ax.Q = Eigen::MatrixXi::Zero(d, d);
    ax.Q(0, 0) = 1;
    ax.P = Eigen::MatrixXi::Zero(d, d);
    ax.P.row(0).tail(kappa).setOnes();
    ax.R = Eigen::MatrixXi::Ones(d, d);
    ax.J = ax.P + ax.P.transpose();
    ax.K = ax.R - Eigen::MatrixXi::Identity(d, d) - ax.J;
    return ax;
}

ConditionalGaussian conditional_gaussian(const SymCov& s) {
    if (s.kappa != 2) {
        throw DomainError("conditional_gaussian: requires kappa == 2");
    }
    if (!is_strictly_pd(s)) {
        throw SingularError("conditional_gaussian: input is not strictly PD");
    }
    const double denom = (s.a - s.b) * (s.a + s.b);
    const double coeff_center = (s.a * s.b - s.b * s.c) / denom;
    const double coeff_leaf = (s.a * s.c - s.b * s.b) / denom;
    const double variance =
        s.a - (s.a * s.b * s.b - 2.0 * s.b * s.b * s.c + s.a * s.c * s.c)
                  / denom;
    return ConditionalGaussian{coeff_center, coeff_leaf, variance};
}

double lambda_eps(double sigma_cond, double eps, LambdaMode mode) {
    if (!(sigma_cond > 0.0) || !(eps > 0.0)) {
        throw DomainError("lambda_eps: sigma_cond and eps must be positive");
    }
    if (eps >= 1.0 / sigma_cond) {
        throw DomainError(
            "lambda_eps: divergent integral, requires eps < 1/sigma_cond");
    }
    const double one_minus = 1.0 - eps * sigma_cond;
    const double inner =
        mode == LambdaMode::paper_printed ? 2.0 * std::numbers::pi / one_minus
                                          : 1.0 / one_minus;
    return 2.0 / eps * std::log(inner);
}

} // namespace lfe
