#pragma once

// Basin-of-attraction rasters: every cell centre is classified by which point
// of an attracting 2-cycle its even iterates approach.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "map_core.hpp"
#include "orbits.hpp"
#include "parallel.hpp"

namespace lrl {

enum class CellClass : std::uint8_t {
    PhaseA = 0,    ///< even iterates -> p1
    PhaseB = 1,    ///< even iterates -> p2
    XExtinct = 2,  ///< x_n -> 0
    YExtinct = 3,  ///< y_n -> 0
    Undecided = 4,
    Invalid = 5,   ///< outside the state space
};

inline constexpr std::size_t kCellClassCount = 6;

inline const char* to_string(CellClass c) noexcept
{
    switch (c) {
    case CellClass::PhaseA: return "PHASE_A";
    case CellClass::PhaseB: return "PHASE_B";
    case CellClass::XExtinct: return "X_EXTINCT";
    case CellClass::YExtinct: return "Y_EXTINCT";
    case CellClass::Undecided: return "UNDECIDED";
    case CellClass::Invalid: return "INVALID";
    }
    return "?";
}

inline constexpr bool is_phase(CellClass c) noexcept
{
    return c == CellClass::PhaseA || c == CellClass::PhaseB;
}

inline constexpr CellClass swapped_phase(CellClass c) noexcept
{
    return c == CellClass::PhaseA ? CellClass::PhaseB : c == CellClass::PhaseB ? CellClass::PhaseA : c;
}

struct BasinOptions {
    std::size_t max_iter = 5000;
    double tol = 1e-4;         ///< max-norm radius around p1 / p2
    double axis_tol = 1e-10;
    std::size_t phase_run = 3; ///< consecutive even steps near a cycle point
    std::size_t axis_run = 50; ///< consecutive steps below axis_tol
};

struct Classification {
    CellClass cls = CellClass::Undecided;
    std::size_t iters = 0;
};

inline Classification classify_point(const MapFamily& f, const Orbit2& o, State s0, const BasinOptions& opt = {})
{
    if (!in_domain(f, s0))
        return {CellClass::Invalid, 0};
    State s = s0;
    std::size_t run_a = 0, run_b = 0, run_x = 0, run_y = 0;
    for (std::size_t n = 0;; ++n) {
        if (n % 2 == 0) {
            run_a = max_norm(s, o.p1) < opt.tol ? run_a + 1 : 0;
            run_b = max_norm(s, o.p2) < opt.tol ? run_b + 1 : 0;
            if (run_a >= opt.phase_run)
                return {CellClass::PhaseA, n};
            if (run_b >= opt.phase_run)
                return {CellClass::PhaseB, n};
        }
        run_x = s.x < opt.axis_tol ? run_x + 1 : 0;
        run_y = s.y < opt.axis_tol ? run_y + 1 : 0;
        if (run_x >= opt.axis_run)
            return {CellClass::XExtinct, n};
        if (run_y >= opt.axis_run)
            return {CellClass::YExtinct, n};
        if (n >= opt.max_iter)
            return {CellClass::Undecided, n};
        s = step_unchecked(f, s);
        if (!std::isfinite(s.x) || !std::isfinite(s.y))
            return {CellClass::Undecided, n + 1};
    }
}

struct Window {
    double x_min = 0.0;
    double x_max = 3.0;
    double y_min = 0.0;
    double y_max = 4.0;
};

/// Cell (i, j) covers column i (along x) and row j (along y, j = 0 at y_min);
/// storage is row-major, cells[j * nx + i].
struct BasinGrid {
    Window window;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<CellClass> cells;
    std::vector<std::uint32_t> iters;
    MapFamily params;
    Orbit2 orbit;
    BasinOptions options;
    std::size_t iters_used = 0;

    double dx() const noexcept { return (window.x_max - window.x_min) / static_cast<double>(nx); }
    double dy() const noexcept { return (window.y_max - window.y_min) / static_cast<double>(ny); }

    State center(std::size_t i, std::size_t j) const noexcept
    {
        return {window.x_min + (static_cast<double>(i) + 0.5) * dx(),
                window.y_min + (static_cast<double>(j) + 0.5) * dy()};
    }

    CellClass at(std::size_t i, std::size_t j) const { return cells.at(j * nx + i); }

    std::array<std::size_t, kCellClassCount> counts() const noexcept
    {
        std::array<std::size_t, kCellClassCount> c{};
        for (CellClass k : cells)
            ++c[static_cast<std::size_t>(k)];
        return c;
    }
};

inline void validate_window(const Window& w, std::size_t nx, std::size_t ny)
{
    for (double v : {w.x_min, w.x_max, w.y_min, w.y_max})
        if (!std::isfinite(v))
            throw InvalidArgument("window bounds must be finite");
    if (!(w.x_min < w.x_max) || !(w.y_min < w.y_max))
        throw InvalidArgument("window must satisfy x_min < x_max and y_min < y_max");
    if (nx < 2 || ny < 2)
        throw InvalidArgument("raster needs at least 2 cells per axis");
}

inline BasinGrid rasterize(const MapFamily& f, const Orbit2& o, const Window& w, std::size_t nx, std::size_t ny,
                           const BasinOptions& opt = {})
{
    validate(f);
    validate_window(w, nx, ny);
    if (!(opt.tol > 0.0))
        throw InvalidArgument("tol must be positive");
    if (!(orbit_residual(f, o.p1, o.p2) <= 1e-8))
        throw StaleOrbit("orbit is not a 2-cycle of this map (residual above 1e-8)");

    BasinGrid g;
    g.window = w;
    g.nx = nx;
    g.ny = ny;
    g.params = f;
    g.orbit = o;
    g.options = opt;
    g.cells.assign(nx * ny, CellClass::Undecided);
    g.iters.assign(nx * ny, 0);
    parallel_for(nx * ny, [&](std::size_t k) {
        const auto c = classify_point(f, o, g.center(k % nx, k / nx), opt);
        g.cells[k] = c.cls;
        g.iters[k] = static_cast<std::uint32_t>(c.iters);
    });
    g.iters_used = g.iters.empty() ? 0 : *std::max_element(g.iters.begin(), g.iters.end());
    return g;
}

/// Cells crossed by overlay curves.
struct Overlay {
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<std::uint8_t> marked;
    std::size_t marked_count = 0;
    std::size_t undecided = 0;      ///< UNDECIDED cells in the grid
    std::size_t undecided_near = 0; ///< of those, within 2 cells of a marked cell

    double undecided_near_fraction() const noexcept
    {
        return undecided ? static_cast<double>(undecided_near) / static_cast<double>(undecided) : 1.0;
    }

    bool at(std::size_t i, std::size_t j) const { return marked.at(j * nx + i) != 0; }
};

inline Overlay boundary_overlay(const BasinGrid& g, const std::vector<Curve>& curves)
{
    Overlay ov;
    ov.nx = g.nx;
    ov.ny = g.ny;
    ov.marked.assign(g.nx * g.ny, 0);
    const double dx = g.dx(), dy = g.dy();
    const double h = 0.25 * std::min(dx, dy);

    auto mark = [&](State p) {
        const double fi = (p.x - g.window.x_min) / dx, fj = (p.y - g.window.y_min) / dy;
        if (!(fi >= 0.0 && fj >= 0.0 && fi < static_cast<double>(g.nx) && fj < static_cast<double>(g.ny)))
            return;
        ov.marked[static_cast<std::size_t>(fj) * g.nx + static_cast<std::size_t>(fi)] = 1;
    };
    for (const Curve& c : curves) {
        if (c.points.size() == 1)
            mark(c.points.front());
        for (std::size_t k = 0; k + 1 < c.points.size(); ++k) {
            const State a = c.points[k], b = c.points[k + 1];
            const auto n = static_cast<std::size_t>(std::ceil(distance(a, b) / h));
            for (std::size_t s = 0; s <= n; ++s) {
                const double t = n ? static_cast<double>(s) / static_cast<double>(n) : 0.0;
                mark({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
            }
        }
    }
    ov.marked_count = static_cast<std::size_t>(std::count(ov.marked.begin(), ov.marked.end(), 1));

    if (g.cells.size() != g.nx * g.ny)
        return ov;
    const auto nx = static_cast<std::ptrdiff_t>(g.nx), ny = static_cast<std::ptrdiff_t>(g.ny);
    for (std::ptrdiff_t j = 0; j < ny; ++j)
        for (std::ptrdiff_t i = 0; i < nx; ++i) {
            if (g.cells[static_cast<std::size_t>(j * nx + i)] != CellClass::Undecided)
                continue;
            ++ov.undecided;
            bool near = false;
            for (std::ptrdiff_t b = std::max<std::ptrdiff_t>(0, j - 2); b <= std::min(ny - 1, j + 2) && !near; ++b)
                for (std::ptrdiff_t a = std::max<std::ptrdiff_t>(0, i - 2); a <= std::min(nx - 1, i + 2); ++a)
                    if (ov.marked[static_cast<std::size_t>(b * nx + a)]) {
                        near = true;
                        break;
                    }
            if (near)
                ++ov.undecided_near;
        }
    return ov;
}

struct PhaseComponents {
    std::size_t phase_a = 0;
    std::size_t phase_b = 0;
    std::size_t total() const noexcept { return phase_a + phase_b; }
};

/// Maximal 4-connected single-phase regions.  Cells marked in `blocked` (if
/// given) are treated as walls.
inline PhaseComponents phase_components(const BasinGrid& g, const Overlay* blocked = nullptr)
{
    PhaseComponents out;
    const std::size_t n = g.nx * g.ny;
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::size_t> stack;
    auto open = [&](std::size_t k) { return is_phase(g.cells[k]) && !(blocked && blocked->marked[k]); };
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start] || !open(start))
            continue;
        const CellClass phase = g.cells[start];
        (phase == CellClass::PhaseA ? out.phase_a : out.phase_b)++;
        stack.assign(1, start);
        seen[start] = 1;
        while (!stack.empty()) {
            const std::size_t k = stack.back();
            stack.pop_back();
            const std::size_t i = k % g.nx, j = k / g.nx;
            const std::size_t nb[4] = {i > 0 ? k - 1 : n, i + 1 < g.nx ? k + 1 : n, j > 0 ? k - g.nx : n,
                                       j + 1 < g.ny ? k + g.nx : n};
            for (std::size_t m : nb)
                if (m < n && !seen[m] && open(m) && g.cells[m] == phase) {
                    seen[m] = 1;
                    stack.push_back(m);
                }
        }
    }
    return out;
}

} // namespace lrl
