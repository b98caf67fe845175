#pragma once

// Map families, one-step evaluation, analytic Jacobians and the compact
// absorbing region of the lottery map.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "mat2.hpp"

namespace lrl {

/// Lottery-Ricker parameters.  a = 0 is the pure lottery model
///   x' = r1 x / (x + y),   y' = y exp(r2 - x - y)
/// and a > 0 the resource-shifted variant  x' = r1 x / (a + x + y).
struct Params {
    double r1 = 2.0;
    double r2 = 2.2;
    double a = 0.0;

    bool lottery() const noexcept { return a == 0.0; }
    friend bool operator==(const Params&, const Params&) = default;
};

/// Ricker competition with constant per-capita stocking of species x:
///   x' = x [s1 + exp(q1 - p1 (x + y))],   y' = y exp(q2 - p2 (x + y))
struct StockingParams {
    double s1 = 0.5;
    double q1 = 1.5;
    double q2 = 2.2;
    double p1 = 1.0;
    double p2 = 1.0;

    friend bool operator==(const StockingParams&, const StockingParams&) = default;
};

using MapFamily = std::variant<Params, StockingParams>;

struct State {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const State&, const State&) = default;
};

inline double max_norm(State p, State q) noexcept
{
    return std::max(std::abs(p.x - q.x), std::abs(p.y - q.y));
}

inline double distance(State p, State q) noexcept { return std::hypot(p.x - q.x, p.y - q.y); }

inline constexpr double kUnderflow = 1e-308;
inline constexpr double kOverflow = 1e300;

namespace detail {

inline void require_finite_positive(double v, const char* name)
{
    if (!std::isfinite(v) || !(v > 0.0))
        throw InvalidArgument(std::string(name) + " must be a finite positive number");
}

inline double flush(double v) noexcept { return std::abs(v) < kUnderflow ? 0.0 : v; }

} // namespace detail

inline void validate(const Params& p)
{
    detail::require_finite_positive(p.r1, "r1");
    detail::require_finite_positive(p.r2, "r2");
    if (!std::isfinite(p.a) || p.a < 0.0)
        throw InvalidArgument("a must be a finite nonnegative number");
}

inline void validate(const StockingParams& p)
{
    if (!std::isfinite(p.s1) || p.s1 < 0.0)
        throw InvalidArgument("s1 must be a finite nonnegative number");
    detail::require_finite_positive(p.q1, "q1");
    detail::require_finite_positive(p.q2, "q2");
    detail::require_finite_positive(p.p1, "p1");
    detail::require_finite_positive(p.p2, "p2");
}

inline void validate(const MapFamily& f)
{
    std::visit([](const auto& p) { validate(p); }, f);
}

/// Checks that `s` lies in the state space of `f`.  The pure lottery map is
/// singular at the origin; every other family accepts it.
inline void validate_state(const MapFamily& f, State s)
{
    if (!std::isfinite(s.x) || !std::isfinite(s.y))
        throw NonFinite("state coordinates must be finite");
    if (s.x < 0.0 || s.y < 0.0)
        throw InvalidArgument("state must lie in the closed positive quadrant");
    if (const auto* p = std::get_if<Params>(&f); p && p->lottery() && s.x + s.y == 0.0)
        throw SingularInput("the lottery map is singular at the origin");
}

inline bool in_domain(const MapFamily& f, State s) noexcept
{
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || s.x < 0.0 || s.y < 0.0)
        return false;
    if (const auto* p = std::get_if<Params>(&f); p && p->lottery())
        return s.x + s.y > 0.0;
    return true;
}

/// One application of the map without argument checks.  Used in hot loops
/// whose inputs are already known to be valid.
inline State step_unchecked(const MapFamily& f, State s) noexcept
{
    const double u = s.x + s.y;
    State out;
    if (const auto* p = std::get_if<Params>(&f)) {
        out.x = s.x == 0.0 ? 0.0 : p->r1 * s.x / (p->a + u);
        out.y = s.y == 0.0 ? 0.0 : s.y * std::exp(p->r2 - u);
    } else {
        const auto& q = std::get<StockingParams>(f);
        out.x = s.x == 0.0 ? 0.0 : s.x * (q.s1 + std::exp(q.q1 - q.p1 * u));
        out.y = s.y == 0.0 ? 0.0 : s.y * std::exp(q.q2 - q.p2 * u);
    }
    out.x = detail::flush(out.x);
    out.y = detail::flush(out.y);
    return out;
}

inline State step(const MapFamily& f, State s)
{
    validate_state(f, s);
    return step_unchecked(f, s);
}

inline Mat2 jacobian_unchecked(const MapFamily& f, State s) noexcept
{
    const double u = s.x + s.y;
    if (const auto* p = std::get_if<Params>(&f)) {
        const double d = p->a + u;
        const double e = std::exp(p->r2 - u);
        return {p->r1 * (p->a + s.y) / (d * d), -p->r1 * s.x / (d * d),
                -s.y * e, (1.0 - s.y) * e};
    }
    const auto& q = std::get<StockingParams>(f);
    const double ex = std::exp(q.q1 - q.p1 * u);
    const double ey = std::exp(q.q2 - q.p2 * u);
    return {q.s1 + ex * (1.0 - q.p1 * s.x), -q.p1 * s.x * ex,
            -q.p2 * s.y * ey, ey * (1.0 - q.p2 * s.y)};
}

inline Mat2 jacobian(const MapFamily& f, State s)
{
    validate_state(f, s);
    return jacobian_unchecked(f, s);
}

/// Orbit segment produced by iterate().  `overflowed` marks an early stop
/// because a coordinate exceeded kOverflow; `states` then ends at the last
/// finite state.
struct Trajectory {
    std::vector<State> states;
    bool overflowed = false;
};

inline Trajectory iterate(const MapFamily& f, State s0, std::size_t n)
{
    validate_state(f, s0);
    Trajectory t;
    t.states.reserve(n + 1);
    t.states.push_back(s0);
    State s = s0;
    for (std::size_t k = 0; k < n; ++k) {
        s = step_unchecked(f, s);
        if (!std::isfinite(s.x) || !std::isfinite(s.y) || s.x > kOverflow || s.y > kOverflow) {
            t.overflowed = true;
            break;
        }
        t.states.push_back(s);
    }
    return t;
}

/// Compact positively invariant set  eps <= x + y <= upper  of the lottery
/// map, which also absorbs every orbit of X.
struct InvariantRegion {
    double eps = 0.0;
    double upper = 0.0;
    double r_m = 0.0;

    bool contains(State s, double slack = 0.0) const noexcept
    {
        const double u = s.x + s.y;
        return s.x >= 0.0 && s.y >= 0.0 && u >= eps * (1.0 - slack) && u <= upper * (1.0 + slack);
    }
};

inline double extinction_threshold(double r2) noexcept
{
    return std::exp(2.0 * r2 - 1.0 - std::exp(r2 - 1.0));
}

inline InvariantRegion invariant_region(const Params& p)
{
    validate(p);
    if (!p.lottery())
        throw InvalidArgument("the absorbing region is only defined for the lottery model (a = 0)");
    if (p.r1 == p.r2)
        throw InvalidArgument("the absorbing region requires r1 != r2");
    InvariantRegion d;
    d.r_m = std::min({p.r1, p.r2, extinction_threshold(p.r2), p.r1 * std::exp(p.r2 - p.r1)});
    d.upper = std::max(p.r1, std::exp(p.r2 - 1.0));
    d.eps = d.r_m;
    return d;
}

inline InvariantRegion invariant_region(const Params& p, double eps)
{
    InvariantRegion d = invariant_region(p);
    if (!(eps > 0.0) || eps > d.r_m)
        throw InvalidArgument("eps must lie in (0, r_m]");
    d.eps = eps;
    return d;
}

} // namespace lrl
