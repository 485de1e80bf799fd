#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lfe/errors.hpp"
#include "lfe/glfe.hpp"
#include "lfe/mcsim.hpp"
#include "lfe/riccati.hpp"
#include "lfe/rng.hpp"
#include "lfe/symcov.hpp"

using namespace lfe;

TEST_SUITE("mcsim") {

TEST_CASE("splitmix64 streams are deterministic and decorrelated") {
    SplitMix64 a(123), b(123), c(124);
    CHECK(a.next() == b.next());
    CHECK(a.next() != c.next());

    NormalStream n1(7, 0), n2(7, 0), n3(7, 1);
    const double x = n1.next();
    CHECK(x == n2.next());
    CHECK(x != n3.next());

    SplitMix64 u(9);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.next_uniform();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("normal stream has standard moments") {
    NormalStream ns(31, 5);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = ns.next();
        sum += x;
        sumsq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sumsq / n - 1.0) < 0.02);
}

TEST_CASE("cycle pair average") {
    const std::vector<double> z{1.0, 2.0, 3.0, 4.0};
    CHECK(cycle_pair_average(z, 0) == doctest::Approx(7.5).epsilon(1e-15));
    CHECK(cycle_pair_average(z, 1) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(cycle_pair_average(z, 2) == doctest::Approx(5.5).epsilon(1e-15));
    CHECK_THROWS_AS(cycle_pair_average(z, 3), std::out_of_range);
    CHECK_THROWS_AS(cycle_pair_average(z, -1), std::out_of_range);

    // invariant under vertex relabeling (cycle rotation)
    const std::vector<double> rot{4.0, 1.0, 2.0, 3.0};
    for (int r = 0; r <= 2; ++r)
        CHECK(cycle_pair_average(z, r) ==
              doctest::Approx(cycle_pair_average(rot, r)).epsilon(1e-13));
}

TEST_CASE("simulation config validation") {
    const GlfeParams p = make_glfe_params(2.0, 1.0, 1.0);
    SimConfig cfg;
    cfg.paths = 10;
    cfg.dt = 0.25;
    cfg.t_end = 1.0;

    SimConfig bad = cfg;
    bad.n = 5;
    CHECK_THROWS_AS(simulate_cycle(p, bad), DomainError);
    bad.n = 2;
    CHECK_THROWS_AS(simulate_cycle(p, bad), DomainError);

    bad = cfg;
    bad.dt = 0.3;  // 1.0 / 0.3 is not an integer
    CHECK_THROWS_AS(simulate_cycle(p, bad), DomainError);

    bad = cfg;
    bad.paths = 0;
    CHECK_THROWS_AS(simulate_cycle(p, bad), DomainError);

    bad = cfg;
    bad.t_end = -1.0;
    CHECK_THROWS_AS(simulate_cycle(p, bad), DomainError);
}

TEST_CASE("explicit scheme stability guard") {
    SimConfig cfg;
    cfg.n = 4;
    cfg.paths = 10;
    cfg.dt = 1.0;
    cfg.t_end = 2.0;
    // fastest mode has drift 3: |1 - dt*3| = 2 >= 1
    CHECK_THROWS_AS(simulate_cycle(make_glfe_params(2.0, 1.0, 1.0), cfg),
                    StabilityError);

    // a negative drift mode is unstable for any dt
    cfg.dt = 0.125;
    cfg.t_end = 0.25;
    CHECK_THROWS_AS(simulate_cycle(make_glfe_params(0.1, 1.0, 1.0), cfg),
                    StabilityError);

    // the exact kernel has no step restriction
    cfg.scheme = Scheme::exact_gaussian;
    CHECK_NOTHROW(simulate_cycle(make_glfe_params(0.1, 1.0, 1.0), cfg));
}

TEST_CASE("estimates are reproducible and scheduling independent") {
    const GlfeParams p = make_glfe_params(2.0, 1.0, 1.0);
    SimConfig cfg;
    cfg.n = 4;
    cfg.paths = 64;
    cfg.dt = 0.05;
    cfg.t_end = 0.25;
    cfg.seed = 99;
    cfg.batches = 8;

    const SimEnsemble one = simulate_cycle(p, cfg);
    SimConfig threaded = cfg;
    threaded.threads = 3;
    const SimEnsemble many = simulate_cycle(p, threaded);
    SimConfig automatic = cfg;
    automatic.threads = 0;
    const SimEnsemble autoThreads = simulate_cycle(p, automatic);

    for (int r = 0; r < 3; ++r) {
        CHECK(one.by_distance[r].estimate == many.by_distance[r].estimate);
        CHECK(one.by_distance[r].std_error == many.by_distance[r].std_error);
        CHECK(one.by_distance[r].estimate == autoThreads.by_distance[r].estimate);
    }
    CHECK(one.paths_done == 64);
    CHECK(one.system_size == 4);
}

TEST_CASE("standard error needs at least two batches") {
    const GlfeParams p = make_glfe_params(2.0, 1.0, 1.0);
    SimConfig cfg;
    cfg.n = 4;
    cfg.paths = 8;
    cfg.dt = 0.05;
    cfg.t_end = 0.1;
    cfg.batches = 1;
    const SimEnsemble single = simulate_cycle(p, cfg);
    CHECK(std::isnan(empirical_neighborhood_cov(single, 0).std_error));

    cfg.batches = 4;
    const SimEnsemble multi = simulate_cycle(p, cfg);
    CHECK(empirical_neighborhood_cov(multi, 0).std_error > 0.0);
    CHECK_THROWS_AS(empirical_neighborhood_cov(multi, 3), std::out_of_range);
    CHECK_THROWS_AS(empirical_neighborhood_cov(multi, -1), std::out_of_range);
}

TEST_CASE("exact kernel matches the spectral covariance") {
    // the exact_gaussian scheme is bias-free, so a coarse step suffices
    const GlfeParams p = make_glfe_params(2.0, 1.0, 1.0);
    SimConfig cfg;
    cfg.n = 4;
    cfg.paths = 20000;
    cfg.dt = 0.5;
    cfg.t_end = 1.0;
    cfg.seed = 12345;
    cfg.scheme = Scheme::exact_gaussian;

    const SimEnsemble ens = simulate_cycle(p, cfg);
    const CycleCov oracle = cycle_at(cfg.n, cfg.t_end, p);
    for (int r = 0; r < 3; ++r) {
        const PairStat st = empirical_neighborhood_cov(ens, r);
        const double z =
            std::abs(st.estimate - cycle_cov_entry(oracle, 0, r)) / st.std_error;
        CHECK(z < 5.0);
    }
}

TEST_CASE("star simulation matches the Riccati marginal") {
    const CovTrajectory traj =
        integrate(2, 2.0, 1.0, make_symcov(2, 1.0, 0.0, 0.0), 0.5);
    SimConfig cfg;
    cfg.paths = 20000;
    cfg.dt = 0.002;
    cfg.t_end = 0.5;
    cfg.seed = 777;

    const SimEnsemble ens = simulate_gmlfe(traj, cfg);
    CHECK(ens.system_size == 3);
    const SymCov exact = marginal_at(traj, cfg.t_end);
    const double vals[3] = {exact.a, exact.b, exact.c};
    for (int r = 0; r < 3; ++r) {
        const PairStat st = empirical_neighborhood_cov(ens, r);
        const double z = std::abs(st.estimate - vals[r]) / st.std_error;
        CHECK(z < 5.0);
    }
}

TEST_CASE("star simulation rejects unsupported configurations") {
    const CovTrajectory traj =
        integrate(2, 2.0, 1.0, make_symcov(2, 1.0, 0.0, 0.0), 0.5);
    SimConfig cfg;
    cfg.paths = 10;
    cfg.dt = 0.1;
    cfg.t_end = 0.5;

    SimConfig bad = cfg;
    bad.scheme = Scheme::exact_gaussian;
    CHECK_THROWS_AS(simulate_gmlfe(traj, bad), DomainError);

    bad = cfg;
    bad.t_end = 1.0;  // beyond trajectory coverage
    CHECK_THROWS_AS(simulate_gmlfe(traj, bad), DomainError);

    bad = cfg;
    bad.dt = 0.4;  // unstable for drift near 2 is fine, but not a multiple
    CHECK_THROWS_AS(simulate_gmlfe(traj, bad), DomainError);
}

} // TEST_SUITE
