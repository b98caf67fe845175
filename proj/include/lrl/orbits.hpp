#pragma once

// Boundary equilibria, the Ricker 2-cycle on the y-axis, and interior
// period-2 orbits (closed forms polished by Newton on H^2(p) - p).

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "errors.hpp"
#include "map_core.hpp"
#include "roots.hpp"

namespace lrl {

struct BoundaryCycle {
    double y1 = 0.0; ///< lower point, 0 < y1 < r2
    double y2 = 0.0; ///< upper point, y2 = 2 r2 - y1
};

/// A period-2 orbit {p1, p2} with s_i = x_i + y_i.  Interior orbits are
/// labelled so that s1 < s2.
struct Orbit2 {
    State p1;
    State p2;
    double s1 = 0.0;
    double s2 = 0.0;
    double residual = 0.0;          ///< max-norm of H(p1) - p2, H(p2) - p1
    double closed_form_shift = 0.0; ///< how far Newton moved the closed form
    /// Only meaningful for a > 0: the shifted closed form assigns the larger
    /// sum to its first point, so its labels are the reverse of ours.
    bool printed_labels_swapped = false;
};

struct ExistenceReport {
    bool applicable = false; ///< r2 > r1 > 0 and a = 0
    bool cond1 = false;      ///< s1 e^{r2 - s1} > s2
    bool cond2 = false;      ///< s1 > y1 of the boundary Ricker cycle
    bool cond3 = false;      ///< 2 <= r1 < r2 < 2.5 and the quadratic lower bound on r1
    bool cond4 = false;      ///< 2.085 <= r1 <= r2 <= 2.5
    bool implication_chain_ok = false;
};

inline double orbit_residual(const MapFamily& f, State p1, State p2) noexcept
{
    return std::max(max_norm(step_unchecked(f, p1), p2), max_norm(step_unchecked(f, p2), p1));
}

inline Orbit2 make_orbit(const MapFamily& f, State p1, State p2)
{
    Orbit2 o;
    o.p1 = p1;
    o.p2 = p2;
    o.s1 = p1.x + p1.y;
    o.s2 = p2.x + p2.y;
    o.residual = orbit_residual(f, p1, p2);
    return o;
}

/// xi* on the x-axis and eta* on the y-axis.
inline std::pair<State, State> boundary_equilibria(const MapFamily& f)
{
    validate(f);
    std::pair<State, State> eq;
    if (const auto* p = std::get_if<Params>(&f)) {
        if (p->r1 <= p->a)
            throw DomainError("no equilibrium on the x-axis: r1 must exceed a");
        eq = {{p->r1 - p->a, 0.0}, {0.0, p->r2}};
    } else {
        const auto& q = std::get<StockingParams>(f);
        if (q.s1 >= 1.0)
            throw DomainError("no equilibrium on the x-axis: stocking rate must be below 1");
        eq = {{(q.q1 - std::log(1.0 - q.s1)) / q.p1, 0.0}, {0.0, q.q2 / q.p2}};
    }
    for (State e : {eq.first, eq.second})
        if (max_norm(step_unchecked(f, e), e) > 1e-14 * std::max(1.0, e.x + e.y))
            throw NumericalError("boundary equilibrium failed the fixed-point check");
    return eq;
}

inline std::pair<State, State> boundary_equilibria(const Params& p)
{
    return boundary_equilibria(MapFamily{p});
}

/// Period-2 orbit {y1, y2} of y -> y exp(r2 - y), born at r2 = 2.
///
/// Writing y1,2 = r2 -/+ z turns the cycle condition y1 e^{r2-y1} = y2 into
/// r2 tanh(z/2) = z, whose nonzero root is bracketed on (0, r2] by
/// m(z) = r2 tanh(z/2) / z - 1  (m(0+) = r2/2 - 1 > 0, m(r2) < 0).
inline BoundaryCycle ricker_2cycle(double r2)
{
    if (!std::isfinite(r2))
        throw InvalidArgument("r2 must be finite");
    if (!(r2 > 2.0))
        throw NoCycle("the Ricker map has no 2-cycle for r2 <= 2");

    auto tanh_ratio = [](double z) {
        // tanh(z/2) / z, with the series near 0
        if (z < 1e-4)
            return 0.5 - z * z / 24.0;
        return std::tanh(0.5 * z) / z;
    };
    auto m = [&](double z) { return r2 * tanh_ratio(z) - 1.0; };
    auto dm = [&](double z) {
        const double c = std::cosh(0.5 * z);
        return r2 * (0.5 * z / (c * c) - std::tanh(0.5 * z)) / (z * z);
    };

    // m is decreasing on (0, inf); start the bracket just above 0
    double lo = std::min(1e-8, 0.5 * r2);
    const auto root = bisect(m, lo, r2, 1e-12);
    if (!root)
        throw ConvergenceFailure("failed to bracket the Ricker 2-cycle");
    double z = newton_polish(m, dm, *root, 5);

    BoundaryCycle c{r2 - z, r2 + z};
    if (!(c.y1 > 0.0 && c.y1 < r2 && c.y2 > r2))
        throw ConvergenceFailure("Ricker 2-cycle left its bracket");
    return c;
}

namespace detail {

/// Newton on F(p) = H^2(p) - p from p.  Returns the polished point or nullopt
/// when the iteration fails to reduce the residual.
inline std::optional<State> newton_period2(const MapFamily& f, State p, int max_steps = 20)
{
    auto residual = [&](State q) {
        const State h2 = step_unchecked(f, step_unchecked(f, q));
        return State{h2.x - q.x, h2.y - q.y};
    };
    State r = residual(p);
    for (int k = 0; k < max_steps; ++k) {
        const double norm = std::max(std::abs(r.x), std::abs(r.y));
        if (norm == 0.0)
            break;
        const State h1 = step_unchecked(f, p);
        Mat2 d = jacobian_unchecked(f, h1) * jacobian_unchecked(f, p);
        d.a00 -= 1.0;
        d.a11 -= 1.0;
        const double det = d.det();
        if (det == 0.0 || !std::isfinite(det))
            return std::nullopt;
        const double dx = (d.a11 * r.x - d.a01 * r.y) / det;
        const double dy = (-d.a10 * r.x + d.a00 * r.y) / det;
        const State next{p.x - dx, p.y - dy};
        if (!in_domain(f, next))
            return std::nullopt;
        const State rn = residual(next);
        const double next_norm = std::max(std::abs(rn.x), std::abs(rn.y));
        if (!(next_norm < norm)) {
            if (norm < 1e-12 * std::max(1.0, p.x + p.y))
                break;
            return std::nullopt;
        }
        p = next;
        r = rn;
    }
    return p;
}

} // namespace detail

/// Polishes an approximate 2-cycle.  The returned orbit keeps the guess's
/// labelling (p1 stays next to guess.p1).
inline Orbit2 polish_2cycle(const MapFamily& f, State guess)
{
    validate(f);
    validate_state(f, guess);
    const auto p1 = detail::newton_period2(f, guess);
    if (!p1)
        throw ConvergenceFailure("Newton iteration for the 2-cycle diverged");
    Orbit2 o = make_orbit(f, *p1, step_unchecked(f, *p1));
    o.closed_form_shift = max_norm(*p1, guess);
    return o;
}

/// Closed-form interior 2-cycle of the lottery family, Newton-polished.
///
/// a = 0:  s1,2 = r2 -/+ sqrt(r2^2 - r1^2) and
///   x1 = s1 (s1 E - s2) / (s1 E - r1),  y1 = s1 (s2 - r1) / (s1 E - r1),
///   x2 = r1 x1 / s1,  y2 = y1 E,  with E = e^{r2 - s1}.
/// a > 0:  the shifted formulas with s1,2 = r2 +/- sqrt((r2 + a)^2 - r1^2).
inline Orbit2 interior_2cycle(const MapFamily& f)
{
    validate(f);
    const auto* pp = std::get_if<Params>(&f);
    if (!pp)
        throw InvalidArgument("interior_2cycle has closed forms only for the lottery family; use find_2cycle");
    const Params& p = *pp;
    const double r1 = p.r1, r2 = p.r2, a = p.a;

    State c1, c2;
    bool swapped = false;
    if (p.lottery()) {
        if (!(r2 > r1))
            throw DomainError("no interior 2-cycle: r2 must exceed r1");
        const double q = std::sqrt((r2 - r1) * (r2 + r1));
        const double s1 = r2 - q, s2 = r2 + q;
        const double e = std::exp(r2 - s1);
        const double den = s1 * e - r1;
        c1 = {s1 * (s1 * e - s2) / den, s1 * (s2 - r1) / den};
        c2 = {r1 * c1.x / s1, c1.y * e};
    } else {
        if (!((r2 + a) * (r2 + a) > r1 * r1))
            throw DomainError("no interior 2-cycle: (r2 + a)^2 must exceed r1^2");
        if (!(r1 * r1 > 2.0 * a * r2))
            throw DomainError("no interior 2-cycle: r1^2 must exceed 2 a r2");
        const double q = std::sqrt((r2 + a - r1) * (r2 + a + r1));
        const double s1 = r2 + q, s2 = r2 - q;
        const double e1 = std::exp(r2 - s1), e2 = std::exp(r2 - s2);
        const double d1 = r1 - (a + s1) * e1, d2 = r1 - (a + s2) * e2;
        c1 = {(a + s1) * (s2 - s1 * e1) / d1, (r1 * s1 - s2 * (a + s1)) / d1};
        c2 = {(a + s2) * (s1 - s2 * e2) / d2, (r1 * s2 - s1 * (a + s2)) / d2};
    }

    auto interior = [](State s) {
        return std::isfinite(s.x) && std::isfinite(s.y) && s.x > 0.0 && s.y > 0.0;
    };
    if (!interior(c1) || !interior(c2))
        throw NoInteriorOrbit("no interior 2-cycle: closed form leaves the open quadrant");
    if (c1.x + c1.y > c2.x + c2.y) {
        std::swap(c1, c2);
        swapped = true;
    }

    const auto polished = detail::newton_period2(f, c1);
    if (!polished || !interior(*polished))
        throw ConvergenceFailure("Newton polish of the interior 2-cycle failed");
    Orbit2 o = make_orbit(f, *polished, step_unchecked(f, *polished));
    o.closed_form_shift = std::max(max_norm(o.p1, c1), max_norm(o.p2, c2));
    o.printed_labels_swapped = swapped;
    if (o.residual > 1e-10)
        throw ConvergenceFailure("interior 2-cycle residual above 1e-10");
    if (o.s1 > o.s2) {
        std::swap(o.p1, o.p2);
        std::swap(o.s1, o.s2);
    }
    return o;
}

inline Orbit2 interior_2cycle(const Params& p) { return interior_2cycle(MapFamily{p}); }

/// Finds an attracting 2-cycle by running `transient` steps from `seed` and
/// polishing the endpoint.  Works for either family.
inline Orbit2 find_2cycle(const MapFamily& f, State seed, std::size_t transient = 20000)
{
    validate(f);
    validate_state(f, seed);
    State s = seed;
    for (std::size_t k = 0; k < transient; ++k)
        s = step_unchecked(f, s);
    Orbit2 o = polish_2cycle(f, s);
    if (max_norm(o.p1, o.p2) < 1e-8)
        throw NoInteriorOrbit("orbit settled on a fixed point, not a 2-cycle");
    if (o.residual > 1e-10)
        throw ConvergenceFailure("2-cycle residual above 1e-10");
    if (o.s1 > o.s2) {
        std::swap(o.p1, o.p2);
        std::swap(o.s1, o.s2);
    }
    return o;
}

/// The four nested sufficient conditions for an interior 2-cycle (a = 0).
inline ExistenceReport existence_conditions(const Params& p)
{
    ExistenceReport r;
    if (!(p.lottery() && p.r1 > 0.0 && p.r2 > p.r1 && std::isfinite(p.r2)))
        return r;
    r.applicable = true;
    const double r1 = p.r1, r2 = p.r2;
    const double q = std::sqrt((r2 - r1) * (r2 + r1));
    const double s1 = r2 - q, s2 = r2 + q;

    r.cond1 = s1 * std::exp(r2 - s1) > s2;
    r.cond2 = r2 > 2.0 && s1 > ricker_2cycle(r2).y1;
    const double lift = (r2 - 2.0) / 0.26;
    r.cond3 = 2.0 <= r1 && r1 < r2 && r2 < 2.5 && r1 > r2 - lift * lift / (2.0 * r2);
    r.cond4 = 2.085 <= r1 && r1 <= r2 && r2 <= 2.5;
    r.implication_chain_ok = (!r.cond4 || r.cond3) && (!r.cond3 || r.cond2) && (!r.cond2 || r.cond1);
    return r;
}

} // namespace lrl
