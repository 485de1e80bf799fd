#include <benchmark/benchmark.h>

#include <lfe/gaussfun.hpp>
#include <lfe/glfe.hpp>
#include <lfe/mcsim.hpp>
#include <lfe/riccati.hpp>
#include <lfe/symcov.hpp>

namespace {

void bm_riccati_rhs(benchmark::State& state) {
    const lfe::SymCov s = lfe::make_symcov(4, 1.0, 0.2, 0.05);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lfe::riccati_rhs_F(s, 2.0, 1.0));
    }
}
BENCHMARK(bm_riccati_rhs);

void bm_riccati_integrate(benchmark::State& state) {
    const lfe::SymCov init = lfe::make_symcov(2, 1.0, 0.0, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lfe::integrate(2, 2.0, 1.0, init, 1.0));
    }
}
BENCHMARK(bm_riccati_integrate);

void bm_glfe_cov(benchmark::State& state) {
    const lfe::GlfeParams p = lfe::make_glfe_params(2.0, 1.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lfe::glfe_cov(p, 2.0));
    }
}
BENCHMARK(bm_glfe_cov);

void bm_bessel_scaled(benchmark::State& state) {
    const double y = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lfe::bessel_i(1, y));
    }
}
BENCHMARK(bm_bessel_scaled)->Arg(1)->Arg(10)->Arg(40);

void bm_cycle_entry(benchmark::State& state) {
    const lfe::GlfeParams p = lfe::make_glfe_params(2.0, 1.0, 1.0);
    const auto c = lfe::cycle_at(256, 1.0, p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lfe::cycle_cov_entry(c, 0, 17));
    }
}
BENCHMARK(bm_cycle_entry);

void bm_simulate_cycle(benchmark::State& state) {
    const lfe::GlfeParams p = lfe::make_glfe_params(2.0, 1.0, 1.0);
    lfe::SimConfig cfg;
    cfg.n = 8;
    cfg.paths = 256;
    cfg.dt = 0.01;
    cfg.t_end = 0.5;
    cfg.scheme = lfe::Scheme::euler;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lfe::simulate_cycle(p, cfg));
    }
}
BENCHMARK(bm_simulate_cycle);

void bm_gauss_kl(benchmark::State& state) {
    const auto pi = lfe::make_gauss_on_star(lfe::stationary_pi(2.0, 1.0));
    const auto nu = lfe::make_gauss_on_star(lfe::make_symcov(2, 1.0, 0.0, 0.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lfe::gauss_kl(nu, pi));
    }
}
BENCHMARK(bm_gauss_kl);

} // namespace

BENCHMARK_MAIN();
