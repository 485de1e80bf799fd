#pragma once

#include <cmath>

#include "lfe/errors.hpp"

namespace lfe::detail {

// Adaptive Simpson with Richardson acceptance: a panel is accepted when the
// two-half refinement moves the estimate by at most 15*tol, giving a final
// error near tol after the delta/15 correction.
template <class F>
double adaptive_simpson_panel(const F& f, double a, double b, double fa,
                              double fm, double fb, double whole, double tol,
                              int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        throw IntegrationError("adaptive Simpson: max recursion depth");
    }
    return adaptive_simpson_panel(f, a, m, fa, flm, fm, left, 0.5 * tol,
                                  depth - 1)
         + adaptive_simpson_panel(f, m, b, fm, frm, fb, right, 0.5 * tol,
                                  depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol,
                        int max_depth = 48) {
    if (a == b) {
        return 0.0;
    }
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_panel(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// (1 - e^{-z}) / z, extended by continuity to 1 at z = 0; stable for small
// |z| via expm1.
inline double one_minus_exp_over(double z) {
    if (z == 0.0) {
        return 1.0;
    }
    return -std::expm1(-z) / z;
}

} // namespace lfe::detail
