#include "lfe/glfe.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "quadrature.hpp"

namespace lfe {

namespace {

constexpr double kPi = std::numbers::pi;

// Series/quadrature switch point: the series stays forward-stable (all terms
// positive) and short below this, the reduced-integrand quadrature takes
// over above.
constexpr double kSeriesCutoff = 15.0;

void require_bessel_domain(int r, double y) {
    if (r < 0) {
        throw DomainError("bessel_i: order must be >= 0");
    }
    if (!(y >= 0.0)) {
        throw DomainError("bessel_i: argument must be >= 0");
    }
}

} // namespace

GlfeParams make_glfe_params(double alpha, double beta, double var0) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(var0)) {
        throw DomainError("glfe params must be finite");
    }
    if (!(var0 > 0.0)) {
        throw DomainError("glfe params: var0 must be > 0");
    }
    return GlfeParams{alpha, beta, var0};
}

double bessel_i_series(int r, double y) {
    require_bessel_domain(r, y);
    const double x = 0.5 * y;
    double term = 1.0;
    for (int m = 1; m <= r; ++m) {
        term *= x / m;
    }
    double sum = term;
    const double x2 = x * x;
    for (int m = 1; m < 512; ++m) {
        term *= x2 / (static_cast<double>(m) * (m + r));
        sum += term;
        if (term <= sum * 1e-17) {
            break;
        }
    }
    return sum;
}

double bessel_i_quadrature(int r, double y) {
    require_bessel_domain(r, y);
    // Factoring out e^y keeps the integrand in [-1, 1]; y cos(pi x) alone
    // would force an absolute tolerance no double can honor at large y.
    const double reduced = detail::adaptive_simpson(
        [r, y](double x) {
            return std::cos(r * kPi * x) * std::exp(y * (std::cos(kPi * x) - 1.0));
        },
        0.0, 1.0, 1e-14);
    return std::exp(y) * reduced;
}

double bessel_i(int r, double y) {
    if (r > 2) {
        throw DomainError("bessel_i: order must be in {0, 1, 2}");
    }
    require_bessel_domain(r, y);
    return y <= kSeriesCutoff ? bessel_i_series(r, y) : bessel_i_quadrature(r, y);
}

SymCov glfe_cov(const GlfeParams& p, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("glfe_cov: t must be finite and >= 0");
    }
    const double ab = std::abs(p.beta);
    double sigma[3];
    for (int r = 0; r < 3; ++r) {
        double integral = 0.0;
        if (t > 0.0) {
            integral = detail::adaptive_simpson(
                [r, ab, &p](double s) {
                    return std::exp(-2.0 * p.alpha * s) * bessel_i(r, 2.0 * s * ab);
                },
                0.0, t, 1e-12);
        }
        const double value =
            p.var0 * std::exp(-2.0 * t * p.alpha) * bessel_i(r, 2.0 * t * ab)
            + 2.0 * integral;
        const bool flip = p.beta > 0.0 && (r & 1);
        sigma[r] = flip ? -value : value;
    }
    return SymCov{2, sigma[0], sigma[1], sigma[2]};
}

SymCov stationary_pi(double alpha, double beta) {
    if (!std::isfinite(alpha) || !std::isfinite(beta)
        || !(alpha > std::abs(beta))) {
        throw NoStationaryLawError(
            "stationary_pi: requires finite alpha > |beta|");
    }
    const double delta = std::sqrt((alpha - beta) * (alpha + beta));
    const double phi = -beta / (alpha + delta);
    const double s0 = 1.0 / delta;
    return SymCov{2, s0, s0 * phi, s0 * phi * phi};
}

double glfe_tail_bound(const GlfeParams& p, double t) {
    const double gap = p.alpha - std::abs(p.beta);
    if (!(gap > 0.0)) {
        throw NoStationaryLawError(
            "glfe_tail_bound: requires alpha > |beta|");
    }
    if (!(t >= 0.0)) {
        throw DomainError("glfe_tail_bound: t must be >= 0");
    }
    return (p.var0 + 4.0 / gap) * std::exp(-2.0 * gap * t);
}

namespace {

void require_cycle_size(int n) {
    if (n < 4 || n % 2 != 0) {
        throw DomainError("cycle: n must be even and >= 4, got "
                          + std::to_string(n));
    }
}

} // namespace

CycleCov cycle_at(int n, double t, const GlfeParams& p) {
    require_cycle_size(n);
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("cycle_at: t must be finite and >= 0");
    }
    return CycleCov{n, t, false, p};
}

CycleCov cycle_limit(int n, const GlfeParams& p) {
    require_cycle_size(n);
    return CycleCov{n, 0.0, true, p};
}

double cycle_cov_entry(const CycleCov& c, int j, int k) {
    if (j < 0 || j >= c.n || k < 0 || k >= c.n) {
        throw std::out_of_range("cycle_cov_entry: vertex index out of range");
    }
    const int r = ((j - k) % c.n + c.n) % c.n;
    double sum = 0.0;
    for (int l = 0; l < c.n; ++l) {
        const double lambda = 2.0 * std::cos(2.0 * kPi * l / c.n);
        const double g = c.params.alpha + 0.5 * c.params.beta * lambda;
        double phi;
        if (c.stationary) {
            if (!(g > 0.0)) {
                throw NoStationaryLawError(
                    "cycle_cov_entry: mode with alpha + (beta/2) lambda <= 0 "
                    "has no stationary limit");
            }
            phi = 1.0 / g;
        } else {
            const double z = 2.0 * c.t * g;
            phi = c.params.var0 * std::exp(-z)
                  + 2.0 * c.t * detail::one_minus_exp_over(z);
        }
        // reduce r*l mod n before forming the angle to keep cos arguments
        // small and exact
        const long long m = static_cast<long long>(r) * l % c.n;
        sum += phi * std::cos(2.0 * kPi * static_cast<double>(m) / c.n);
    }
    return sum / c.n;
}

} // namespace lfe
