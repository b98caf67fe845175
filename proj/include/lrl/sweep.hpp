#pragma once

// One-parameter sweeps of the interior 2-cycle and its stability.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "io.hpp"
#include "map_core.hpp"
#include "orbits.hpp"
#include "stability.hpp"

namespace lrl {

enum class SweepParam { Delta, R1, R2, A };

inline const char* to_string(SweepParam p) noexcept
{
    switch (p) {
    case SweepParam::Delta: return "delta";
    case SweepParam::R1: return "r1";
    case SweepParam::R2: return "r2";
    case SweepParam::A: return "a";
    }
    return "?";
}

inline SweepParam parse_sweep_param(const std::string& s)
{
    if (s == "delta")
        return SweepParam::Delta;
    if (s == "r1")
        return SweepParam::R1;
    if (s == "r2")
        return SweepParam::R2;
    if (s == "a")
        return SweepParam::A;
    throw InvalidArgument("unknown sweep parameter '" + s + "' (expected delta, r1, r2 or a)");
}

inline const std::vector<std::string>& sweep_columns()
{
    static const std::vector<std::string> cols{"x1", "y1", "x2", "y2", "s1", "s2", "det_plus_1", "abs_trace",
                                               "jury_pass", "cond1", "cond2", "cond3", "cond4"};
    return cols;
}

/// `delta` fixes r1 = 2, a = 0 and sets r2 = 2 + delta; the others vary one
/// field of `base`.
struct SweepSpec {
    SweepParam parameter = SweepParam::Delta;
    double start = 0.0;
    double stop = 1.0;
    std::size_t steps = 101;
    Params base;
    std::vector<std::string> columns; ///< empty = all of sweep_columns()
};

struct SweepRow {
    double value = 0.0;
    Params params;
    std::string status = "ok"; ///< ok | invalid | no_orbit | numerical
    std::optional<Orbit2> orbit;
    std::optional<StabilityReport> stability;
    ExistenceReport existence;
};

inline void validate(const SweepSpec& s)
{
    if (!std::isfinite(s.start) || !std::isfinite(s.stop) || !(s.start < s.stop))
        throw InvalidArgument("sweep needs finite start < stop");
    if (s.steps < 2)
        throw InvalidArgument("sweep needs at least 2 steps");
    for (const auto& c : s.columns)
        if (std::find(sweep_columns().begin(), sweep_columns().end(), c) == sweep_columns().end())
            throw InvalidArgument("unknown sweep column '" + c + "'");
}

inline Params sweep_point(const SweepSpec& s, double v)
{
    Params p = s.base;
    switch (s.parameter) {
    case SweepParam::Delta: p = Params{2.0, 2.0 + v, 0.0}; break;
    case SweepParam::R1: p.r1 = v; break;
    case SweepParam::R2: p.r2 = v; break;
    case SweepParam::A: p.a = v; break;
    }
    return p;
}

inline std::vector<SweepRow> sweep(const SweepSpec& s)
{
    validate(s);
    std::vector<SweepRow> rows(s.steps);
    for (std::size_t k = 0; k < s.steps; ++k) {
        SweepRow& row = rows[k];
        row.value = k + 1 == s.steps ? s.stop
                                     : s.start + (s.stop - s.start) * static_cast<double>(k) /
                                                     static_cast<double>(s.steps - 1);
        row.params = sweep_point(s, row.value);
        try {
            validate(row.params);
            row.existence = existence_conditions(row.params);
            row.orbit = interior_2cycle(row.params);
            row.stability = cycle_stability(row.params, *row.orbit);
        } catch (const InvalidArgument&) {
            row.status = "invalid";
        } catch (const DomainError&) {
            row.status = "no_orbit";
        } catch (const NumericalError&) {
            row.status = "numerical";
        }
    }
    return rows;
}

inline void write_sweep_csv(std::ostream& os, const SweepSpec& s, const std::vector<SweepRow>& rows)
{
    const auto& cols = s.columns.empty() ? sweep_columns() : s.columns;
    os << to_string(s.parameter) << ",status";
    for (const auto& c : cols)
        os << ',' << c;
    os << '\n';
    for (const auto& r : rows) {
        os << format_full(r.value) << ',' << r.status;
        const bool ok = r.orbit && r.stability;
        for (const auto& c : cols) {
            os << ',';
            auto cond = [&](bool v) { os << (r.existence.applicable ? (v ? "1" : "0") : ""); };
            if (c == "cond1")
                cond(r.existence.cond1);
            else if (c == "cond2")
                cond(r.existence.cond2);
            else if (c == "cond3")
                cond(r.existence.cond3);
            else if (c == "cond4")
                cond(r.existence.cond4);
            else if (!ok)
                continue;
            else if (c == "x1")
                os << format_full(r.orbit->p1.x);
            else if (c == "y1")
                os << format_full(r.orbit->p1.y);
            else if (c == "x2")
                os << format_full(r.orbit->p2.x);
            else if (c == "y2")
                os << format_full(r.orbit->p2.y);
            else if (c == "s1")
                os << format_full(r.orbit->s1);
            else if (c == "s2")
                os << format_full(r.orbit->s2);
            else if (c == "det_plus_1")
                os << format_full(r.stability->det + 1.0);
            else if (c == "abs_trace")
                os << format_full(std::abs(r.stability->trace));
            else if (c == "jury_pass")
                os << (r.stability->jury_pass ? 1 : 0);
        }
        os << '\n';
    }
}

/// Values at which jury_pass flips between consecutive successful rows.
inline std::vector<double> jury_crossings(const std::vector<SweepRow>& rows)
{
    std::vector<double> out;
    const SweepRow* prev = nullptr;
    for (const auto& r : rows) {
        if (!r.stability)
            continue;
        if (prev && prev->stability->jury_pass != r.stability->jury_pass)
            out.push_back(r.value);
        prev = &r;
    }
    return out;
}

} // namespace lrl
