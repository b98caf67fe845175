#pragma once

// CSV, PGM (P5) and PPM (P6) writers.  CSV numbers carry 17 significant
// digits, lines end in LF and a header row is always written.

#include <array>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include "basin.hpp"
#include "geometry.hpp"
#include "map_core.hpp"

namespace lrl {

/// Full-precision form used in data files.
inline std::string format_full(double v)
{
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

/// Shortest decimal string that round-trips to `v`.
inline std::string format_short(double v)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string describe(const MapFamily& f)
{
    if (const auto* p = std::get_if<Params>(&f))
        return "family=lottery r1=" + format_short(p->r1) + " r2=" + format_short(p->r2) + " a=" + format_short(p->a);
    const auto& q = std::get<StockingParams>(f);
    return "family=stocking s1=" + format_short(q.s1) + " q1=" + format_short(q.q1) + " q2=" + format_short(q.q2) +
           " p1=" + format_short(q.p1) + " p2=" + format_short(q.p2);
}

inline void write_trajectory_csv(std::ostream& os, const std::vector<State>& states)
{
    os << "n,x,y\n";
    for (std::size_t n = 0; n < states.size(); ++n)
        os << n << ',' << format_full(states[n].x) << ',' << format_full(states[n].y) << '\n';
}

inline void write_curves_csv(std::ostream& os, const std::vector<Curve>& curves)
{
    os << "rank,curve_id,point_index,x,y\n";
    for (std::size_t c = 0; c < curves.size(); ++c)
        for (std::size_t k = 0; k < curves[c].points.size(); ++k)
            os << curves[c].rank << ',' << c << ',' << k << ',' << format_full(curves[c].points[k].x) << ','
               << format_full(curves[c].points[k].y) << '\n';
}

inline void write_basin_csv(std::ostream& os, const BasinGrid& g)
{
    os << "i,j,x,y,class,iters\n";
    for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t i = 0; i < g.nx; ++i) {
            const State c = g.center(i, j);
            os << i << ',' << j << ',' << format_full(c.x) << ',' << format_full(c.y) << ','
               << to_string(g.at(i, j)) << ',' << g.iters[j * g.nx + i] << '\n';
        }
}

using Rgb = std::array<std::uint8_t, 3>;

/// Fixed palette, indexed by CellClass.
inline constexpr std::array<Rgb, kCellClassCount> kPalette{{
    {255, 0, 0},     // PHASE_A red
    {0, 0, 255},     // PHASE_B blue
    {255, 255, 255}, // X_EXTINCT white
    {0, 0, 0},       // Y_EXTINCT black
    {128, 128, 128}, // UNDECIDED gray
    {255, 255, 0},   // INVALID yellow
}};
inline constexpr Rgb kOverlayColor{0, 200, 0};

inline std::string basin_header_comment(const BasinGrid& g)
{
    return "# lrl basin " + describe(g.params) + " window=[" + format_short(g.window.x_min) + "," +
           format_short(g.window.x_max) + "]x[" + format_short(g.window.y_min) + "," + format_short(g.window.y_max) +
           "] nx=" + std::to_string(g.nx) + " ny=" + std::to_string(g.ny) +
           " max_iter=" + std::to_string(g.options.max_iter) + " tol=" + format_short(g.options.tol) +
           " axis_tol=" + format_short(g.options.axis_tol) + "\n";
}

/// Class indices as gray levels (0..5); the top image row is y_max.
inline void write_pgm(std::ostream& os, const BasinGrid& g)
{
    os << "P5\n" << basin_header_comment(g)
       << "# pixel = class index: 0 PHASE_A, 1 PHASE_B, 2 X_EXTINCT, 3 Y_EXTINCT, 4 UNDECIDED, 5 INVALID\n"
       << g.nx << ' ' << g.ny << "\n255\n";
    std::vector<char> row(g.nx);
    for (std::size_t r = 0; r < g.ny; ++r) {
        const std::size_t j = g.ny - 1 - r;
        for (std::size_t i = 0; i < g.nx; ++i)
            row[i] = static_cast<char>(g.at(i, j));
        os.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

/// Coloured raster; cells marked in `overlay` are painted green.
inline void write_ppm(std::ostream& os, const BasinGrid& g, const Overlay* overlay = nullptr)
{
    os << "P6\n" << basin_header_comment(g)
       << "# palette PHASE_A=red PHASE_B=blue X_EXTINCT=white Y_EXTINCT=black UNDECIDED=gray INVALID=yellow"
       << (overlay ? " overlay=green" : "") << "\n"
       << g.nx << ' ' << g.ny << "\n255\n";
    std::vector<char> row(3 * g.nx);
    for (std::size_t r = 0; r < g.ny; ++r) {
        const std::size_t j = g.ny - 1 - r;
        for (std::size_t i = 0; i < g.nx; ++i) {
            Rgb c = kPalette[static_cast<std::size_t>(g.at(i, j))];
            if (overlay && overlay->at(i, j))
                c = kOverlayColor;
            for (int k = 0; k < 3; ++k)
                row[3 * i + static_cast<std::size_t>(k)] = static_cast<char>(c[static_cast<std::size_t>(k)]);
        }
        os.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

} // namespace lrl
