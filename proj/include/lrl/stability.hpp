#pragma once

// Local stability of 2-cycles, competitive-exclusion regimes with their
// Lyapunov-ratio certificates, and an empirical persistence probe.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "map_core.hpp"
#include "mat2.hpp"
#include "orbits.hpp"
#include "parallel.hpp"
#include "sampling.hpp"

namespace lrl {

struct StabilityReport {
    Mat2 jac_product; ///< DH(p2) DH(p1), the derivative of H^2 at p1
    double trace = 0.0;
    double det = 0.0;
    std::pair<std::complex<double>, std::complex<double>> eigenvalues;
    bool jury_pass = false;
    double spectral_radius = 0.0;
};

/// Jury conditions for a 2x2 map: 2 > 1 + det > |trace|.
inline bool jury_test(double trace, double det) noexcept
{
    return 2.0 > 1.0 + det && 1.0 + det > std::abs(trace);
}

inline StabilityReport stability_of(const Mat2& m)
{
    StabilityReport r;
    r.jac_product = m;
    r.trace = m.trace();
    r.det = m.det();
    r.eigenvalues = quadratic_eigenvalues(r.trace, r.det);
    r.spectral_radius = std::max(std::abs(r.eigenvalues.first), std::abs(r.eigenvalues.second));
    r.jury_pass = jury_test(r.trace, r.det);
    return r;
}

inline StabilityReport cycle_stability(const MapFamily& f, const Orbit2& o)
{
    validate(f);
    validate_state(f, o.p1);
    validate_state(f, o.p2);
    if (!(orbit_residual(f, o.p1, o.p2) <= 1e-8))
        throw StaleOrbit("orbit is not a 2-cycle of this map (residual above 1e-8)");
    return stability_of(jacobian_unchecked(f, o.p2) * jacobian_unchecked(f, o.p1));
}

/// Small-delta expansions of det(J) + 1 and trace(J) at r1 = 2, r2 = 2 + delta.
struct DeltaSeries {
    double det_plus_1 = 0.0;
    double trace = 0.0;
};

inline DeltaSeries delta_series_check(double delta)
{
    if (!(delta > 0.0 && delta <= 0.1))
        throw InvalidArgument("delta must lie in (0, 0.1]");
    return {2.0 - 8.0 * delta / 3.0 + 49.0 * delta * delta / 30.0,
            2.0 - 8.0 * delta / 3.0 + 3.0 * delta * delta / 10.0};
}

/// Computed minus truncated series at r1 = 2, r2 = 2 + delta.
inline DeltaSeries delta_series_residuals(double delta)
{
    const DeltaSeries series = delta_series_check(delta);
    const Params p{2.0, 2.0 + delta, 0.0};
    const StabilityReport s = cycle_stability(p, interior_2cycle(p));
    return {s.det + 1.0 - series.det_plus_1, s.trace - series.trace};
}

/// Least-squares slope of log|err| against log(h).
inline double fit_order(std::span<const double> h, std::span<const double> err)
{
    if (h.size() != err.size() || h.size() < 2)
        throw InvalidArgument("fit_order needs at least two matching samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double lx = std::log(h[i]), ly = std::log(std::abs(err[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

enum class Regime { XWinsGlobally, YPersistsXExtinct, YPersistsXUnresolved, Undetermined };

inline const char* to_string(Regime r) noexcept
{
    switch (r) {
    case Regime::XWinsGlobally: return "X_WINS_GLOBALLY";
    case Regime::YPersistsXExtinct: return "Y_PERSISTS_X_EXTINCT";
    case Regime::YPersistsXUnresolved: return "Y_PERSISTS_X_UNRESOLVED";
    case Regime::Undetermined: return "UNDETERMINED";
    }
    return "?";
}

struct RegimeReport {
    Regime regime = Regime::Undetermined;
    bool c1 = false;
    bool c2 = false;
    bool c3 = false;
    double transverse_xi = 0.0;  ///< e^{r2 - r1}
    double transverse_eta = 0.0; ///< r1 / r2
    double extinction_threshold = 0.0;
};

inline RegimeReport classify_regime(const Params& p, const HeteroclinicOptions& het = {})
{
    validate(p);
    if (!p.lottery())
        throw InvalidArgument("regime classification is defined for a = 0");
    RegimeReport r;
    const double r1 = p.r1, r2 = p.r2;
    r.transverse_xi = std::exp(r2 - r1);
    r.transverse_eta = r1 / r2;
    r.extinction_threshold = extinction_threshold(r2);

    if (r1 > r2)
        r.regime = Regime::XWinsGlobally;
    else if (r1 < r2)
        r.regime = r1 < r.extinction_threshold ? Regime::YPersistsXExtinct : Regime::YPersistsXUnresolved;

    r.c1 = 2.0 < r2 && r2 < 2.52 && r2 > r1 && r1 > 1.0 && r.extinction_threshold > 1.0;
    if (r2 > 2.0) {
        const BoundaryCycle m = ricker_2cycle(r2);
        r.c2 = r1 * r1 / (m.y1 * m.y2) > 1.0;
    }
    try {
        r.c3 = trace_heteroclinic(p, het).found;
    } catch (const PreconditionError&) {
        r.c3 = false;
    }
    return r;
}

enum class Certificate { XWins, XExtinct };

struct CertificateResult {
    double max_ratio = 0.0; ///< max of V(H(p)) / V(p) over the samples
    double bound = 0.0;     ///< analytic supremum of the ratio on the sampled region
    double eps = 0.0;       ///< inner radius of the sampled region
    double upper = 0.0;
    std::size_t samples = 0;
};

/// Samples V(H(p)) / V(p) on the interior of the absorbing region, with
///   XWins:    V = x^{-r1} y  on D_{r_m},  sup = e^{r2 - r1}
///   XExtinct: V = x / y      on D_{r1},   sup = r1 / min(g(r1), g(upper)),
/// g(u) = u e^{r2 - u}.  When g(r1) >= g(upper) the XExtinct bound is the
/// familiar r1 / e^{2 r2 - 1 - e^{r2 - 1}}.
inline CertificateResult lyapunov_certificate(const Params& p, Certificate which, std::size_t samples,
                                              std::uint64_t seed = kDefaultSeed)
{
    validate(p);
    if (!p.lottery())
        throw InvalidArgument("Lyapunov certificates are defined for a = 0");
    const double r1 = p.r1, r2 = p.r2;
    CertificateResult c;
    c.samples = samples;
    InvariantRegion d;
    if (which == Certificate::XWins) {
        if (!(r1 > r2))
            throw PreconditionError("the x-wins certificate requires r1 > r2");
        d = invariant_region(p);
        c.bound = std::exp(r2 - r1);
    } else {
        if (!(r2 > r1 && r1 < extinction_threshold(r2)))
            throw PreconditionError("the extinction certificate requires r1 < r2 and r1 < e^{2 r2 - 1 - e^{r2 - 1}}");
        d = invariant_region(p, r1);
        auto g = [&](double u) { return u * std::exp(r2 - u); };
        c.bound = r1 / std::min(g(d.eps), g(d.upper));
    }
    c.eps = d.eps;
    c.upper = d.upper;

    auto log_v = [&](State s) {
        return which == Certificate::XWins ? -r1 * std::log(s.x) + std::log(s.y) : std::log(s.x) - std::log(s.y);
    };
    Halton2 seq(seed);
    c.max_ratio = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const auto [a, b] = seq.next();
        const double u = d.eps + a * (d.upper - d.eps);
        const State s{b * u, (1.0 - b) * u};
        if (!(s.x > 0.0 && s.y > 0.0))
            continue;
        const State h = step_unchecked(p, s);
        c.max_ratio = std::max(c.max_ratio, std::exp(log_v(h) - log_v(s)));
    }
    return c;
}

struct PersistenceOptions {
    std::size_t sample_points = 1000;
    std::size_t burn_in = 1000;
    std::size_t horizon = 2000;
    double exclusion_tol = 1e-8;
    std::uint64_t seed = kDefaultSeed;
    double x_max = 3.0; ///< samples are uniform on (0, x_max) x (0, y_max)
    double y_max = 4.0;
};

struct PointPersistence {
    State initial;
    State last;
    double liminf_min = 0.0; ///< min over the window of min(x_n, y_n)
    double limsup_x = 0.0;   ///< max over the window of x_n
    double min_y = 0.0;      ///< min over the window of y_n
    bool boundary = false;   ///< started on an axis
    bool near_axis = false;  ///< came within exclusion_tol of an axis
};

struct PersistenceEstimate {
    double liminf_min = 0.0; ///< min over interior, non-excluded samples
    double limsup_x = 0.0;   ///< min over the same samples of the window max of x
    std::size_t horizon = 0;
    std::size_t burn_in = 0;
    std::size_t sample_points = 0;
    std::size_t boundary_count = 0;
    std::size_t near_axis_count = 0;
    std::vector<PointPersistence> points;

    /// Fraction of interior (non-boundary) samples whose liminf proxy exceeds `floor`.
    double fraction_above(double floor) const noexcept
    {
        std::size_t n = 0, hit = 0;
        for (const auto& r : points) {
            if (r.boundary)
                continue;
            ++n;
            if (r.liminf_min > floor)
                ++hit;
        }
        return n ? static_cast<double>(hit) / static_cast<double>(n) : 0.0;
    }
};

/// Liminf/limsup proxies for explicit initial points.
inline PersistenceEstimate persistence_probe(const MapFamily& f, std::span<const State> initial,
                                             const PersistenceOptions& opt)
{
    validate(f);
    if (!(opt.horizon > opt.burn_in))
        throw InvalidArgument("horizon must exceed burn_in");
    for (State s : initial)
        validate_state(f, s);

    PersistenceEstimate e;
    e.horizon = opt.horizon;
    e.burn_in = opt.burn_in;
    e.sample_points = initial.size();
    e.points.resize(initial.size());

    parallel_for(initial.size(), [&](std::size_t i) {
        PointPersistence r;
        r.initial = initial[i];
        r.boundary = initial[i].x == 0.0 || initial[i].y == 0.0;
        State s = initial[i];
        double lo = std::numeric_limits<double>::infinity(), lo_y = lo, hi_x = 0.0;
        for (std::size_t n = 0; n <= opt.horizon; ++n) {
            if (std::min(s.x, s.y) < opt.exclusion_tol)
                r.near_axis = true;
            if (n >= opt.burn_in) {
                lo = std::min(lo, std::min(s.x, s.y));
                lo_y = std::min(lo_y, s.y);
                hi_x = std::max(hi_x, s.x);
            }
            if (n < opt.horizon)
                s = step_unchecked(f, s);
        }
        r.last = s;
        r.liminf_min = lo;
        r.min_y = lo_y;
        r.limsup_x = hi_x;
        e.points[i] = r;
    });

    double lo = std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& r : e.points) {
        if (r.boundary) {
            ++e.boundary_count;
            continue;
        }
        if (r.near_axis) {
            ++e.near_axis_count;
            continue;
        }
        any = true;
        lo = std::min(lo, r.liminf_min);
        hi = std::min(hi, r.limsup_x);
    }
    e.liminf_min = any ? lo : 0.0;
    e.limsup_x = any ? hi : 0.0;
    return e;
}

/// Uniform random interior samples, reproducible from opt.seed.
inline std::vector<State> sample_interior(const PersistenceOptions& opt)
{
    UniformSampler rng(opt.seed);
    std::vector<State> pts(opt.sample_points);
    for (auto& s : pts) {
        s.x = opt.x_max * rng.next_open();
        s.y = opt.y_max * rng.next_open();
    }
    return pts;
}

inline PersistenceEstimate persistence_probe(const MapFamily& f, const PersistenceOptions& opt = {})
{
    const auto pts = sample_interior(opt);
    return persistence_probe(f, pts, opt);
}

} // namespace lrl
