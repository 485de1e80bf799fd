#pragma once

#include <span>

namespace lfe {

/// Exponential decay rate extracted from a positive series: least-squares
/// affine fit of log(value) against t over [window_lo, window_hi];
/// rate = -slope. r_squared is computed on the fitted window only; a
/// constant series fits exactly (rate 0, r_squared 1).
struct RateFit {
    double rate = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    int n_points = 0;
};

/// times and values must match in size; the window must contain at least two
/// distinct times and strictly positive values, else DomainError.
RateFit fit_rate(std::span<const double> times, std::span<const double> values,
                 double window_lo, double window_hi);

} // namespace lfe
