#pragma once

// Heteroclinic connection xi* -> eta* and finite-rank pre-images of points
// and polylines.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "map_core.hpp"
#include "orbits.hpp"
#include "parallel.hpp"
#include "roots.hpp"

namespace lrl {

enum class CurveSource { Heteroclinic, Preimage };

/// Open polyline in the closed quadrant.
struct Curve {
    std::vector<State> points;
    bool closed = false;
    CurveSource source = CurveSource::Heteroclinic;
    int rank = 0;                ///< pre-image rank, 0 for the invariant curve itself
    double jump_threshold = 0.0; ///< chaining threshold used to build a pre-image curve
};

enum class ExitReason { Converged, MaxIter, LeftRegion };

struct HeteroclinicResult {
    bool found = false;
    Curve orbit;                  ///< seed .. closest approach to eta*
    double min_dist_to_eta = std::numeric_limits<double>::infinity();
    ExitReason exit_reason = ExitReason::MaxIter;
    std::size_t closest_index = 0;
    State xi;
    State eta;
    State seed;
    double unstable_eigenvalue = 0.0;
    std::array<double, 2> direction{0.0, 0.0}; ///< unstable eigenvector, pointing into y > 0
};

struct HeteroclinicOptions {
    double offset = 1e-3;
    double tol = 1e-2;
    std::size_t max_iter = 500;
    std::optional<State> seed; ///< shoot from this point instead of xi* + offset v
};

inline double distance_to_segment(State p, State a, State b) noexcept
{
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

inline double distance_to_polyline(State p, const std::vector<State>& pts) noexcept
{
    if (pts.empty())
        return std::numeric_limits<double>::infinity();
    if (pts.size() == 1)
        return distance(p, pts.front());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        best = std::min(best, distance_to_segment(p, pts[i], pts[i + 1]));
    return best;
}

namespace detail {

struct UnstableDirection {
    double lambda;
    std::array<double, 2> v;
};

inline UnstableDirection transverse_direction(const MapFamily& f, State xi)
{
    const Mat2 j = jacobian(f, xi);
    // at y = 0 the Jacobian is upper triangular; a11 is the transverse multiplier
    const double lambda = j.a11;
    if (!(std::abs(lambda) > 1.0))
        throw PreconditionError("xi* is transversally stable; no unstable manifold leaves the x-axis");
    auto v = eigenvector(j, lambda);
    if (v[1] < 0.0) {
        v[0] = -v[0];
        v[1] = -v[1];
    }
    return {lambda, v};
}

inline double escape_bound(State xi, State eta) noexcept
{
    return 10.0 * std::max({xi.x, eta.y, 1.0});
}

} // namespace detail

/// Shoots along the branch of the unstable manifold of xi* that enters the
/// open quadrant and records the orbit up to its closest approach to eta*.
inline HeteroclinicResult trace_heteroclinic(const MapFamily& f, const HeteroclinicOptions& opt = {})
{
    validate(f);
    if (!(opt.offset > 0.0) || !(opt.tol > 0.0))
        throw InvalidArgument("offset and tol must be positive");
    HeteroclinicResult r;
    std::tie(r.xi, r.eta) = boundary_equilibria(f);
    const auto dir = detail::transverse_direction(f, r.xi);
    r.unstable_eigenvalue = dir.lambda;
    r.direction = dir.v;
    r.seed = opt.seed ? *opt.seed
                      : State{r.xi.x + opt.offset * dir.v[0], r.xi.y + opt.offset * dir.v[1]};
    validate_state(f, r.seed);

    const double bound = detail::escape_bound(r.xi, r.eta);
    std::vector<State> pts{r.seed};
    State s = r.seed;
    bool left = false;
    for (std::size_t k = 0;; ++k) {
        const double d = distance(s, r.eta);
        if (d < r.min_dist_to_eta) {
            r.min_dist_to_eta = d;
            r.closest_index = k;
        }
        if (k == opt.max_iter)
            break;
        s = step_unchecked(f, s);
        if (!std::isfinite(s.x) || !std::isfinite(s.y) || s.x + s.y > bound) {
            left = true;
            break;
        }
        pts.push_back(s);
    }
    pts.resize(r.closest_index + 1);
    r.orbit.points = std::move(pts);
    r.orbit.source = CurveSource::Heteroclinic;
    r.found = r.min_dist_to_eta <= opt.tol;
    r.exit_reason = r.found ? ExitReason::Converged : left ? ExitReason::LeftRegion : ExitReason::MaxIter;
    return r;
}

/// Dense polyline approximation of the heteroclinic curve C.
///
/// Seeds are spread geometrically over one fundamental domain
/// [offset, offset * lambda) of the unstable direction; their orbits, ordered
/// by (iteration, seed), sweep out C from xi* to eta*.  The endpoints xi* and
/// eta* are included.  Throws PreconditionError when no connection is found.
inline Curve heteroclinic_curve(const MapFamily& f, const HeteroclinicOptions& opt = {},
                                std::size_t seeds_per_domain = 32)
{
    const HeteroclinicResult base = trace_heteroclinic(f, opt);
    if (!base.found)
        throw PreconditionError("no heteroclinic connection found at these parameters");
    seeds_per_domain = std::max<std::size_t>(seeds_per_domain, 1);

    std::vector<std::vector<State>> orbits(seeds_per_domain);
    for (std::size_t j = 0; j < seeds_per_domain; ++j) {
        const double t = opt.offset * std::pow(base.unstable_eigenvalue,
                                               static_cast<double>(j) / static_cast<double>(seeds_per_domain));
        State s{base.xi.x + t * base.direction[0], base.xi.y + t * base.direction[1]};
        std::vector<State> pts{s};
        double best = distance(s, base.eta);
        std::size_t best_k = 0;
        for (std::size_t k = 1; k <= opt.max_iter; ++k) {
            s = step_unchecked(f, s);
            if (!std::isfinite(s.x) || !std::isfinite(s.y))
                break;
            pts.push_back(s);
            const double d = distance(s, base.eta);
            if (d < best) {
                best = d;
                best_k = k;
            }
        }
        pts.resize(best_k + 1);
        orbits[j] = std::move(pts);
    }

    Curve c;
    c.source = CurveSource::Heteroclinic;
    c.points.push_back(base.xi);
    std::size_t longest = 0;
    for (const auto& o : orbits)
        longest = std::max(longest, o.size());
    for (std::size_t k = 0; k < longest; ++k)
        for (const auto& o : orbits)
            if (k < o.size() && !(o[k] == c.points.back()))
                c.points.push_back(o[k]);
    if (!(c.points.back() == base.eta))
        c.points.push_back(base.eta);
    return c;
}

/// Rank-1 pre-images of an interior point under the pure lottery map.
///
/// With u = x + y the map gives x' = r1 x / u and y' = u (1 - x'/r1) e^{r2-u},
/// so u solves  (1 - x'/r1) u e^{r2-u} = y'.  The left side is unimodal with
/// its peak at u = 1; roots are isolated on (0, 1] and [1, 50].  Results are
/// ordered by increasing u.
inline std::vector<State> preimages_point(const MapFamily& f, State target)
{
    validate(f);
    const auto* p = std::get_if<Params>(&f);
    if (!p || !p->lottery())
        throw InvalidArgument("point pre-images are implemented for the lottery map with a = 0");
    if (!std::isfinite(target.x) || !std::isfinite(target.y))
        throw NonFinite("target must be finite");
    if (!(target.x > 0.0 && target.y > 0.0))
        throw DomainError("pre-images of axis points are degenerate; target must be interior");

    std::vector<State> out;
    const double c = 1.0 - target.x / p->r1;
    if (!(c > 0.0))
        return out;
    const double r2 = p->r2, yt = target.y;
    auto h = [&](double u) { return c * u * std::exp(r2 - u) - yt; };
    auto dh = [&](double u) { return c * std::exp(r2 - u) * (1.0 - u); };
    auto to_state = [&](double u) { return State{target.x * u / p->r1, c * u}; };

    constexpr double u_peak = 1.0, u_max = 50.0;
    const double peak = h(u_peak);
    if (peak < 0.0)
        return out;
    if (peak == 0.0) {
        out.push_back(to_state(u_peak));
        return out;
    }
    if (auto lo = bisect(h, 0.0, u_peak, 1e-12))
        out.push_back(to_state(newton_polish(h, dh, *lo, 3)));
    if (auto hi = bisect(h, u_peak, u_max, 1e-12))
        out.push_back(to_state(newton_polish(h, dh, *hi, 3)));
    return out;
}

namespace detail {

inline std::vector<State> densify(const std::vector<State>& pts, std::size_t per_segment)
{
    per_segment = std::max<std::size_t>(per_segment, 1);
    std::vector<State> out;
    if (pts.empty())
        return out;
    out.reserve((pts.size() - 1) * per_segment + 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        for (std::size_t k = 0; k < per_segment; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(per_segment);
            out.push_back({pts[i].x + t * (pts[i + 1].x - pts[i].x), pts[i].y + t * (pts[i + 1].y - pts[i].y)});
        }
    out.push_back(pts.back());
    return out;
}

inline double median(std::vector<double> v)
{
    if (v.empty())
        return 0.0;
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

/// Splits one pre-image branch into polylines at gaps and at jumps larger than
/// 10x the median spacing.
inline void chain_branch(const std::vector<std::optional<State>>& seq, int rank, std::vector<Curve>& out)
{
    std::vector<double> spacing;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (seq[i] && seq[i + 1])
            spacing.push_back(distance(*seq[i], *seq[i + 1]));
    const double threshold = 10.0 * median(spacing);

    Curve cur;
    auto flush = [&] {
        if (cur.points.size() >= 2) {
            cur.source = CurveSource::Preimage;
            cur.rank = rank;
            cur.jump_threshold = threshold;
            out.push_back(std::move(cur));
        }
        cur = Curve{};
    };
    for (const auto& s : seq) {
        if (!s) {
            flush();
            continue;
        }
        if (!cur.points.empty()) {
            const double d = distance(cur.points.back(), *s);
            if (d == 0.0)
                continue;
            if (d > threshold)
                flush();
        }
        cur.points.push_back(*s);
    }
    flush();
}

} // namespace detail

struct PreimageOptions {
    std::size_t samples_per_segment = 1;
    /// Pre-images of an invariant curve that fall back onto the curve itself
    /// (within this distance) are not counted as pre-images.
    double on_curve_tol = 1e-3;
};

/// Rank-1 .. rank-`rank` pre-image curves of `c`.  Axis-touching samples are
/// skipped.
inline std::vector<Curve> preimages_curve(const MapFamily& f, const Curve& c, int rank,
                                          const PreimageOptions& opt = {})
{
    if (rank < 1)
        throw InvalidArgument("rank must be at least 1");
    std::vector<Curve> all;
    std::vector<Curve> frontier{c};
    for (int r = 1; r <= rank; ++r) {
        std::vector<Curve> next;
        for (const Curve& src : frontier) {
            const auto targets = detail::densify(src.points, opt.samples_per_segment);
            std::vector<std::vector<State>> roots(targets.size());
            parallel_for(targets.size(), [&](std::size_t i) {
                const State t = targets[i];
                if (t.x > 0.0 && t.y > 0.0)
                    roots[i] = preimages_point(f, t);
            });
            const bool invariant = src.source == CurveSource::Heteroclinic;
            std::vector<std::optional<State>> low(targets.size()), high(targets.size());
            for (std::size_t i = 0; i < targets.size(); ++i) {
                for (const State& q : roots[i]) {
                    if (invariant && distance_to_polyline(q, src.points) < opt.on_curve_tol)
                        continue;
                    (q.x + q.y <= 1.0 ? low[i] : high[i]) = q;
                }
            }
            detail::chain_branch(low, r, next);
            detail::chain_branch(high, r, next);
        }
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return all;
}

} // namespace lrl
