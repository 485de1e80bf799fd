#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "lfe/errors.hpp"
#include "lfe/rng.hpp"
#include "lfe/symcov.hpp"

using namespace lfe;

TEST_SUITE("symcov") {

TEST_CASE("make_symcov validates kappa and finiteness") {
    CHECK_THROWS_AS(make_symcov(1, 1.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_symcov(0, 1.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_symcov(2, std::nan(""), 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_symcov(2, 1.0, 0.0, HUGE_VAL), DomainError);
    const SymCov s = make_symcov(3, 2.0, -0.5, 0.25);
    CHECK(s.kappa == 3);
    CHECK(s.a == 2.0);
}

TEST_CASE("dense realization has star structure") {
    const SymCov s = make_symcov(3, 2.0, -0.5, 0.25);
    const Eigen::MatrixXd m = dense(s);
    REQUIRE(m.rows() == 4);
    REQUIRE(m.cols() == 4);
    CHECK(m(0, 0) == 2.0);
    CHECK(m(2, 2) == 2.0);
    CHECK(m(0, 1) == -0.5);
    CHECK(m(3, 0) == -0.5);
    CHECK(m(1, 2) == 0.25);
    CHECK(m(3, 1) == 0.25);
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spectrum matches a dense eigensolver") {
    SplitMix64 rng(42);
    for (int it = 0; it < 50; ++it) {
        const int kappa = 2 + static_cast<int>(rng.next() % 5);
        const double a = 0.1 + 3.0 * rng.next_uniform();
        const double b = a * (2.0 * rng.next_uniform() - 1.0);
        const double c = a * (2.0 * rng.next_uniform() - 1.0);
        const SymCov s = make_symcov(kappa, a, b, c);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(s),
                                                          Eigen::EigenvaluesOnly);
        const Eigen::VectorXd ev = es.eigenvalues();
        const StarSpectrum sp = spectrum(s);

        CHECK(std::abs(ev.minCoeff() - std::min({sp.leaf, sp.block_lo, sp.block_hi})) <
              1e-12);
        CHECK(std::abs(ev.maxCoeff() - std::max({sp.leaf, sp.block_lo, sp.block_hi})) <
              1e-12);
        double prod = 1.0;
        for (int i = 0; i < ev.size(); ++i) prod *= ev(i);
        const double prod_closed =
            std::pow(sp.leaf, kappa - 1) * sp.block_lo * sp.block_hi;
        CHECK(std::abs(prod - prod_closed) <= 1e-10 * std::max(1.0, std::abs(prod)));
    }
}

TEST_CASE("strict positive definiteness sign conditions") {
    CHECK(is_strictly_pd(make_symcov(2, 1.0, 0.0, 0.0)));
    CHECK(is_strictly_pd(make_symcov(2, 1.0, 0.5, 0.25)));
    CHECK_FALSE(is_strictly_pd(make_symcov(2, 1.0, 1.0, 0.0)));   // block det 1-2 < 0
    CHECK_FALSE(is_strictly_pd(make_symcov(2, 1.0, 0.0, 1.0)));   // a - c = 0
    CHECK_FALSE(is_strictly_pd(make_symcov(2, 1.0, 0.0, -1.0)));  // a + c = 0
    CHECK_FALSE(is_strictly_pd(make_symcov(2, -1.0, 0.0, 0.0)));
}

TEST_CASE("precision and determinant at a frozen point") {
    // stationary covariance at alpha=2, beta=1
    const SymCov pi = make_symcov(2, 0.57735026918962576, -0.15470053837925153,
                                  0.04145188432738035);
    const PrecisionDet pd = precision_and_det(pi);
    CHECK(std::abs(pd.det - 0.16580753730952141) < 1e-12);
    CHECK(std::abs(pd.precision(0, 0) - 2.0) < 1e-10);
    CHECK(std::abs(pd.precision(0, 1) - 0.5) < 1e-10);
    CHECK(std::abs(pd.precision(0, 2) - 0.5) < 1e-10);
    CHECK(std::abs(pd.precision(1, 1) - 1.86602540378443865) < 1e-10);
    CHECK(std::abs(pd.precision(1, 2)) < 1e-12);

    const Eigen::MatrixXd should_be_id = pd.precision * dense(pi);
    CHECK((should_be_id - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <
          1e-12);

    CHECK_THROWS_AS(precision_and_det(make_symcov(2, 1.0, 1.0, 0.0)), SingularError);
}

TEST_CASE("conditional-expectation coefficients f and g") {
    const CondCoeffs co = fg(make_symcov(2, 2.0, 1.0, 0.0));
    CHECK(co.f == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(co.g == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(fg(make_symcov(2, 1.0, 1.0, 0.0)), SingularError);
    CHECK_THROWS_AS(fg(make_symcov(2, 1.0, -1.0, 0.0)), SingularError);
}

TEST_CASE("tilde coefficients and the singular convention") {
    const TildeCoeffs tc = tilde_coeffs(make_symcov(2, 2.0, 1.0, 0.0), 2.0, 1.0);
    CHECK(tc.alpha_tilde == doctest::Approx(7.0 / 3.0).epsilon(1e-14));
    CHECK(tc.beta_tilde == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    const TildeCoeffs sing = tilde_coeffs(make_symcov(2, 1.0, 1.0, 0.0), 2.0, 1.0);
    CHECK(sing.alpha_tilde == 0.0);
    CHECK(sing.beta_tilde == 0.0);
}

TEST_CASE("drift matrix row structure") {
    const SymCov s = make_symcov(2, 2.0, 1.0, 0.0);
    const double alpha = 2.0, beta = 1.0;
    const TildeCoeffs tc = tilde_coeffs(s, alpha, beta);
    const Eigen::MatrixXd lm = drift_matrix_L(s, alpha, beta);
    CHECK(lm(0, 0) == alpha);
    CHECK(lm(0, 1) == beta / 2.0);
    CHECK(lm(0, 2) == beta / 2.0);
    CHECK(lm(1, 0) == tc.beta_tilde);
    CHECK(lm(1, 1) == tc.alpha_tilde);
    CHECK(lm(1, 2) == 0.0);
    CHECK(lm(2, 0) == tc.beta_tilde);
    CHECK(lm(2, 2) == tc.alpha_tilde);
}

TEST_CASE("Riccati right-hand side at a frozen point") {
    const SymCov f = riccati_rhs_F(make_symcov(2, 2.0, 1.0, 0.0), 2.0, 1.0);
    CHECK(f.a == doctest::Approx(-8.0).epsilon(1e-14));
    CHECK(f.b == doctest::Approx(-6.0).epsilon(1e-14));
    CHECK(f.c == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("Riccati right-hand side equals the dense quadratic form") {
    SplitMix64 rng(7);
    for (int it = 0; it < 30; ++it) {
        const int kappa = 2 + static_cast<int>(rng.next() % 5);
        double a, b, c;
        do {
            a = 0.1 + 2.0 * rng.next_uniform();
            b = a * (2.0 * rng.next_uniform() - 1.0);
            c = a * (2.0 * rng.next_uniform() - 1.0);
        } while (!is_strictly_pd(make_symcov(kappa, a, b, c)));
        const SymCov s = make_symcov(kappa, a, b, c);
        const double alpha = 4.0 * rng.next_uniform() - 2.0;
        const double beta = 4.0 * rng.next_uniform() - 2.0;

        const int d = kappa + 1;
        const Eigen::MatrixXd sm = dense(s);
        const Eigen::MatrixXd lm = drift_matrix_L(s, alpha, beta);
        const Eigen::MatrixXd expect =
            2.0 * Eigen::MatrixXd::Identity(d, d) - lm * sm - sm * lm.transpose();
        const Eigen::MatrixXd got = dense(riccati_rhs_F(s, alpha, beta));
        CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("auxiliary matrices satisfy the star relations") {
    for (int kappa = 2; kappa <= 5; ++kappa) {
        const AuxMatrices m = aux_matrices(kappa);
        const int d = kappa + 1;
        const Eigen::MatrixXi idm = Eigen::MatrixXi::Identity(d, d);
        const Eigen::MatrixXi pt = m.P.transpose();
        CHECK(Eigen::MatrixXi(m.P + pt) == m.J);
        CHECK(Eigen::MatrixXi(m.Q * m.J) == m.P);
        CHECK(Eigen::MatrixXi(m.P * m.J) == Eigen::MatrixXi(kappa * m.Q));
        CHECK(Eigen::MatrixXi(pt * m.J) == Eigen::MatrixXi(m.K + idm - m.Q));
        CHECK(Eigen::MatrixXi(m.K + m.J + idm) == m.R);
    }
}

TEST_CASE("conditional Gaussian law for kappa = 2") {
    const ConditionalGaussian cg = conditional_gaussian(make_symcov(2, 2.0, 1.0, 0.0));
    CHECK(cg.coeff_center == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(cg.coeff_leaf == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(cg.variance == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(conditional_gaussian(make_symcov(3, 2.0, 1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(conditional_gaussian(make_symcov(2, 1.0, 1.0, 0.0)),
                    SingularError);
}

TEST_CASE("exponential-integrability constant") {
    const double eps = 0.5;
    CHECK(lambda_eps(1.0, eps) == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(lambda_eps(1.0, eps, LambdaMode::paper_printed) ==
          doctest::Approx(4.0 * std::log(4.0 * std::numbers::pi)).epsilon(1e-14));

    CHECK_THROWS_AS(lambda_eps(0.0, 0.5), DomainError);
    CHECK_THROWS_AS(lambda_eps(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(lambda_eps(1.0, 1.0), DomainError);   // eps >= 1/sigma diverges
    CHECK_THROWS_AS(lambda_eps(2.0, 0.75), DomainError);
}

TEST_CASE("weighted transport bound between conditional laws") {
    // |m - m'|^2 <= (4/eps + Lambda_eps) KL between the one-leaf conditional
    // laws of two covariances, at eps = 1/(2 * variance of the reference law).
    SplitMix64 rng(2026);
    auto random_pd = [&rng]() {
        for (;;) {
            const double a = 0.2 + 2.0 * rng.next_uniform();
            const double b = a * (2.0 * rng.next_uniform() - 1.0);
            const double c = a * (2.0 * rng.next_uniform() - 1.0);
            const SymCov s = make_symcov(2, a, b, c);
            if (is_strictly_pd(s)) return s;
        }
    };
    for (int it = 0; it < 200; ++it) {
        const ConditionalGaussian p = conditional_gaussian(random_pd());
        const ConditionalGaussian q = conditional_gaussian(random_pd());
        const double x = 4.0 * rng.next_uniform() - 2.0;
        const double y = 4.0 * rng.next_uniform() - 2.0;
        const double dm =
            (p.coeff_center - q.coeff_center) * x + (p.coeff_leaf - q.coeff_leaf) * y;
        const double kl = 0.5 * (q.variance / p.variance - 1.0 -
                                 std::log(q.variance / p.variance) +
                                 dm * dm / p.variance);
        const double eps = 1.0 / (2.0 * p.variance);
        const double weight = 4.0 / eps + lambda_eps(p.variance, eps);
        CHECK(dm * dm <= weight * kl * (1.0 + 1e-12) + 1e-300);
    }
}

} // TEST_SUITE
