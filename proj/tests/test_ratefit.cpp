#include <doctest.h>

#include <cmath>
#include <vector>

#include "lfe/errors.hpp"
#include "lfe/ratefit.hpp"
#include "lfe/rng.hpp"

using namespace lfe;

TEST_SUITE("ratefit") {

TEST_CASE("exact exponential series is fitted exactly") {
    std::vector<double> ts, vs;
    for (int i = 0; i <= 20; ++i) {
        const double t = 0.5 * i;
        ts.push_back(t);
        vs.push_back(5.0 * std::exp(-3.0 * t));
    }
    const RateFit fit = fit_rate(ts, vs, 2.0, 8.0);
    CHECK(fit.rate == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(5.0)).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.window_lo == 2.0);
    CHECK(fit.window_hi == 8.0);
    CHECK(fit.n_points == 13);
}

TEST_CASE("constant series has rate zero and perfect fit") {
    const std::vector<double> ts{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> vs{2.5, 2.5, 2.5, 2.5};
    const RateFit fit = fit_rate(ts, vs, 0.0, 3.0);
    CHECK(fit.rate == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(fit.r_squared == 1.0);
}

TEST_CASE("window restricts the fitted points") {
    // decay rate 1 on [0, 5), rate 4 on [5, 10]
    std::vector<double> ts, vs;
    for (int i = 0; i <= 100; ++i) {
        const double t = 0.1 * i;
        ts.push_back(t);
        vs.push_back(t < 5.0 ? std::exp(-t) : std::exp(-5.0) * std::exp(-4.0 * (t - 5.0)));
    }
    const RateFit early = fit_rate(ts, vs, 0.0, 4.9);
    const RateFit late = fit_rate(ts, vs, 5.0, 10.0);
    CHECK(early.rate == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(late.rate == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("noisy decay is recovered approximately") {
    SplitMix64 rng(99);
    std::vector<double> ts, vs;
    for (int i = 0; i <= 80; ++i) {
        const double t = 0.1 * i;
        ts.push_back(t);
        vs.push_back(std::exp(-2.0 * t) * (1.0 + 0.02 * (rng.next_uniform() - 0.5)));
    }
    const RateFit fit = fit_rate(ts, vs, 0.0, 8.0);
    CHECK(std::abs(fit.rate - 2.0) < 0.01);
    CHECK(fit.r_squared > 0.999);
}

TEST_CASE("domain errors") {
    const std::vector<double> ts{0.0, 1.0, 2.0};
    const std::vector<double> ok{1.0, 0.5, 0.25};
    const std::vector<double> short_vs{1.0, 0.5};
    const std::vector<double> with_zero{1.0, 0.0, 0.25};
    const std::vector<double> with_neg{1.0, -0.5, 0.25};

    CHECK_THROWS_AS(fit_rate(ts, short_vs, 0.0, 2.0), DomainError);   // size mismatch
    CHECK_THROWS_AS(fit_rate(ts, ok, 5.0, 8.0), DomainError);         // empty window
    CHECK_THROWS_AS(fit_rate(ts, ok, 1.0, 1.0), DomainError);         // single point
    CHECK_THROWS_AS(fit_rate(ts, with_zero, 0.0, 2.0), DomainError);  // nonpositive
    CHECK_THROWS_AS(fit_rate(ts, with_neg, 0.0, 2.0), DomainError);

    // nonpositive values outside the window are ignored
    const std::vector<double> ts4{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> vs4{0.0, 1.0, 0.5, 0.25};
    CHECK_NOTHROW(fit_rate(ts4, vs4, 0.5, 3.5));
}

} // TEST_SUITE
