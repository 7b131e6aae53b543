#pragma once
/* numeric.hpp -- bracketed bisection and adaptive Simpson quadrature.
 *
 * Deliberately plain: every solver in this project reduces to a monotone or
 * sign-bracketed scalar problem, so bisection with a hard iteration cap is
 * the whole story. No state, no tolerances hidden in globals.
 */

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace enclose {

// Root of f on [lo, hi]; requires a sign change. Runs until |f(mid)| < ftol
// or max_iter halvings, whichever first, and returns the midpoint.
template <class F>
double bisect(F&& f, double lo, double hi, double ftol = 1e-12, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::runtime_error("bisect: no sign change on [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "] (f = " + std::to_string(flo) + ", " +
                                 std::to_string(fhi) + ")");
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < max_iter; ++i) {
        mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) < ftol) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return mid;
}

// Grow [lo, hi] geometrically (factor 2 about its log-midpoint) until f
// changes sign across it. Both ends must stay positive; meant for roots in
// the lbar direction. Throws after max_doublings growths.
template <class F>
std::pair<double, double> expand_bracket(F&& f, double lo, double hi, int max_doublings = 60) {
    double flo = f(lo);
    double fhi = f(hi);
    for (int i = 0; i < max_doublings; ++i) {
        if ((flo > 0.0) != (fhi > 0.0) || flo == 0.0 || fhi == 0.0)
            return {lo, hi};
        lo *= 0.5;
        hi *= 2.0;
        flo = f(lo);
        fhi = f(hi);
    }
    throw std::runtime_error("expand_bracket: no sign change after " +
                             std::to_string(max_doublings) + " doublings; f(" +
                             std::to_string(lo) + ") = " + std::to_string(flo) + ", f(" +
                             std::to_string(hi) + ") = " + std::to_string(fhi));
}

namespace detail {
template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

// Adaptive Simpson integral of f over [a, b] to absolute tolerance tol.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-10) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace enclose
