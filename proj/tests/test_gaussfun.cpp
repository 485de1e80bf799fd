#include <doctest.h>

#include <cmath>

#include "lfe/errors.hpp"
#include "lfe/gaussfun.hpp"
#include "lfe/glfe.hpp"
#include "lfe/rng.hpp"
#include "lfe/symcov.hpp"

using namespace lfe;

namespace {

GaussOnStar gauss(double a, double b, double c) {
    return make_gauss_on_star(make_symcov(2, a, b, c));
}

GaussOnStar random_gauss(SplitMix64& rng) {
    for (;;) {
        const double a = 0.2 + 2.0 * rng.next_uniform();
        const double b = a * (2.0 * rng.next_uniform() - 1.0);
        const double c = a * (2.0 * rng.next_uniform() - 1.0);
        const SymCov s = make_symcov(2, a, b, c);
        if (is_strictly_pd(s)) return make_gauss_on_star(s);
    }
}

} // namespace

TEST_SUITE("gaussfun") {

TEST_CASE("construction requires kappa 2 and strict PD") {
    CHECK_THROWS_AS(make_gauss_on_star(make_symcov(3, 1.0, 0.0, 0.0)), DomainError);
    CHECK_THROWS_AS(make_gauss_on_star(make_symcov(2, 1.0, 1.0, 0.0)), DomainError);
    CHECK_NOTHROW(gauss(1.0, 0.0, 0.0));
}

TEST_CASE("KL closed form") {
    const GaussOnStar id = gauss(1.0, 0.0, 0.0);
    CHECK(gauss_kl(id, id) == 0.0);

    // KL(N(0, 2I) || N(0, I)) = (3/2)(1 - ln 2)
    CHECK(gauss_kl(gauss(2.0, 0.0, 0.0), id) ==
          doctest::Approx(0.46027922916008203).epsilon(1e-13));

    const GaussOnStar pi = make_gauss_on_star(stationary_pi(2.0, 1.0));
    CHECK(gauss_kl(id, pi) == doctest::Approx(0.4675616152525397).epsilon(1e-12));
    CHECK(gauss_kl(pi, pi) == 0.0);
}

TEST_CASE("KL is nonnegative on random pairs") {
    SplitMix64 rng(11);
    for (int it = 0; it < 100; ++it) {
        const GaussOnStar x = random_gauss(rng);
        const GaussOnStar y = random_gauss(rng);
        CHECK(gauss_kl(x, y) >= 0.0);
    }
}

TEST_CASE("edge marginal KL closed form") {
    const GaussOnStar id = gauss(1.0, 0.0, 0.0);
    // edge blocks [[2,1],[1,2]] vs I2: KL = (4 - 2 - ln 3)/2
    CHECK(edge_marginal_kl(gauss(2.0, 1.0, 0.0), id) ==
          doctest::Approx(1.0 - 0.5 * std::log(3.0)).epsilon(1e-13));

    const GaussOnStar pi = make_gauss_on_star(stationary_pi(2.0, 1.0));
    CHECK(edge_marginal_kl(id, pi) ==
          doctest::Approx(0.2794669734349754).epsilon(1e-12));
}

TEST_CASE("total variation upper bound") {
    const GaussOnStar ref = make_gauss_on_star(stationary_pi(2.0, 1.0));
    const GaussOnStar scaled = make_gauss_on_star(
        make_symcov(2, ref.cov.a * 1.1, ref.cov.b * 1.1, ref.cov.c * 1.1));
    CHECK(tv_upper_bound(ref, scaled, TvPrefactor::unit) ==
          doctest::Approx(0.1 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(tv_upper_bound(ref, scaled) ==
          doctest::Approx(0.15 * std::sqrt(3.0)).epsilon(1e-12));
    // the self-bound only vanishes up to rounding in the inverse product
    CHECK(tv_upper_bound(ref, ref) < 1e-14);
}

TEST_CASE("sparse free energy gap: frozen value, zero at pi, nonnegative") {
    const GaussOnStar id = gauss(1.0, 0.0, 0.0);
    CHECK(sparse_free_energy_gap(id, 2.0, 1.0) ==
          doctest::Approx(0.1880946418175643).epsilon(1e-12));

    const GaussOnStar pi = make_gauss_on_star(stationary_pi(2.0, 1.0));
    CHECK(std::abs(sparse_free_energy_gap(pi, 2.0, 1.0)) < 1e-13);

    SplitMix64 rng(5);
    for (int it = 0; it < 50; ++it)
        CHECK(sparse_free_energy_gap(random_gauss(rng), 2.0, 1.0) >= 0.0);

    CHECK_THROWS_AS(sparse_free_energy_gap(id, 1.0, 1.0), NoStationaryLawError);
}

TEST_CASE("absolute sparse free energy is the gap plus a constant") {
    const double alpha = 2.0, beta = 1.0;
    const GaussOnStar pi = make_gauss_on_star(stationary_pi(alpha, beta));
    const double at_pi = sparse_free_energy_abs(pi, alpha, beta);
    SplitMix64 rng(17);
    for (int it = 0; it < 50; ++it) {
        const GaussOnStar nu = random_gauss(rng);
        const double gap = sparse_free_energy_gap(nu, alpha, beta);
        const double abs_nu = sparse_free_energy_abs(nu, alpha, beta);
        CHECK(std::abs((abs_nu - at_pi) - gap) < 1e-11);
    }
}

TEST_CASE("modified Fisher information: frozen value and zero at pi") {
    const GaussOnStar id = gauss(1.0, 0.0, 0.0);
    CHECK(modified_fisher(id, 2.0, 1.0) == doctest::Approx(1.5).epsilon(1e-13));

    const GaussOnStar pi = make_gauss_on_star(stationary_pi(2.0, 1.0));
    CHECK(modified_fisher(pi, 2.0, 1.0) < 1e-13);

    SplitMix64 rng(23);
    for (int it = 0; it < 50; ++it)
        CHECK(modified_fisher(random_gauss(rng), 2.0, 1.0) >= 0.0);
}

TEST_CASE("Pinsker bound") {
    CHECK(pinsker_tv_bound(0.0) == 0.0);
    CHECK(pinsker_tv_bound(2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(pinsker_tv_bound(-1e-6), DomainError);

    // TV estimates are consistent: for laws this close the Frobenius bound
    // and the Pinsker bound are both small
    const GaussOnStar pi = make_gauss_on_star(stationary_pi(2.0, 1.0));
    const GaussOnStar near = make_gauss_on_star(
        make_symcov(2, pi.cov.a + 1e-4, pi.cov.b, pi.cov.c));
    CHECK(pinsker_tv_bound(gauss_kl(near, pi)) < 1e-3);
    CHECK(tv_upper_bound(pi, near) < 1e-3);
}

} // TEST_SUITE
