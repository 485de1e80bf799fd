#include "lfe/ratefit.hpp"

#include <cmath>
#include <vector>

#include "lfe/errors.hpp"

namespace lfe {

RateFit fit_rate(std::span<const double> times, std::span<const double> values,
                 double window_lo, double window_hi) {
    if (times.size() != values.size()) {
        throw DomainError("fit_rate: times and values differ in size");
    }
    if (!(window_lo < window_hi)) {
        throw DomainError("fit_rate: empty window");
    }

    std::vector<double> t;
    std::vector<double> logv;
    const double slack = 1e-12 * std::max(1.0, std::abs(window_hi));
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < window_lo - slack || times[i] > window_hi + slack) {
            continue;
        }
        if (!(values[i] > 0.0)) {
            throw DomainError(
                "fit_rate: nonpositive value inside the fit window");
        }
        t.push_back(times[i]);
        logv.push_back(std::log(values[i]));
    }
    const std::size_t n = t.size();
    if (n < 2) {
        throw DomainError("fit_rate: window holds fewer than two points");
    }

    double mean_t = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_t += t[i];
        mean_y += logv[i];
    }
    mean_t /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = t[i] - mean_t;
        const double dy = logv[i] - mean_y;
        sxx += dt * dt;
        sxy += dt * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw DomainError("fit_rate: window holds a single distinct time");
    }

    const double slope = sxy / sxx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fit = mean_y + slope * (t[i] - mean_t);
        ss_res += (logv[i] - fit) * (logv[i] - fit);
    }
    // a constant series fits exactly; avoid 0/0
    const double r2 = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;

    RateFit out;
    out.rate = -slope;
    out.intercept = mean_y - slope * mean_t;
    out.r_squared = r2;
    out.window_lo = window_lo;
    out.window_hi = window_hi;
    out.n_points = static_cast<int>(n);
    return out;
}

} // namespace lfe
