#pragma once

#include <cmath>
#include <optional>

namespace lrl {

/// Bisection on [lo, hi] where g(lo) and g(hi) have opposite signs (or one is
/// zero).  Stops once the bracket is narrower than `width` or stops shrinking.
template <class F>
std::optional<double> bisect(F&& g, double lo, double hi, double width = 1e-12, int max_iter = 400)
{
    double glo = g(lo);
    const double ghi = g(hi);
    if (glo == 0.0)
        return lo;
    if (ghi == 0.0)
        return hi;
    if ((glo < 0.0) == (ghi < 0.0))
        return std::nullopt;
    for (int i = 0; i < max_iter && hi - lo > width; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double gm = g(mid);
        if (gm == 0.0)
            return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// A few Newton steps that are only accepted while they reduce |g|.
template <class F, class DF>
double newton_polish(F&& g, DF&& dg, double x, int steps = 5)
{
    double gx = g(x);
    for (int i = 0; i < steps && gx != 0.0; ++i) {
        const double d = dg(x);
        if (d == 0.0 || !std::isfinite(d))
            break;
        const double next = x - gx / d;
        const double gn = g(next);
        if (!(std::abs(gn) < std::abs(gx)))
            break;
        x = next;
        gx = gn;
    }
    return x;
}

} // namespace lrl
