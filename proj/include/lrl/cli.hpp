#pragma once

// Command-line front end.  run_cli() is the whole program; tools/lrl.cpp only
// forwards argv to it.
//
// Exit codes: 0 success, 1 I/O failure, 2 usage or validation error,
// 3 numerical failure (no orbit, no connection, overflow, ...).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "basin.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "map_core.hpp"
#include "orbits.hpp"
#include "sampling.hpp"
#include "stability.hpp"
#include "sweep.hpp"

namespace lrl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

class IoError : public Error {
public:
    using Error::Error;
};

inline const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"simulate", "orbit",  "stability", "regime", "heteroclinic",
                                                "preimage", "basin",  "sweep",     "certify"};
    return names;
}

/// Everything a command may need.  Defaults are the values used throughout
/// the documentation; flags and config files override them.
struct RunConfig {
    std::string command;

    std::string family = "lottery";
    Params lottery;
    StockingParams stocking;
    std::uint64_t seed = kDefaultSeed;
    std::string out;

    // simulate / seeds
    std::optional<double> x0, y0;
    std::size_t n = 200;

    // heteroclinic
    double offset = 1e-3;
    double het_tol = 1e-2;
    std::size_t het_max_iter = 500;
    std::size_t dense = 0;

    // preimage
    std::optional<double> target_x, target_y;
    int rank = 1;
    std::size_t samples_per_segment = 1;

    // basin
    Window window;
    std::size_t nx = 200, ny = 200;
    std::size_t max_iter = 5000;
    double tol = 1e-4;
    double axis_tol = 1e-10;
    int overlay_rank = -1;
    std::string out_pgm, out_ppm, out_csv;

    // sweep
    std::string sweep_param = "delta";
    double start = 0.0, stop = 1.0;
    std::size_t steps = 101;
    std::vector<std::string> columns;

    // certify
    std::size_t samples = 10000;
    std::size_t points = 1000;
    std::size_t burn_in = 1000;
    std::size_t horizon = 2000;
    double exclusion_tol = 1e-8;

    MapFamily map_family() const
    {
        if (family == "lottery")
            return lottery;
        if (family == "stocking")
            return stocking;
        throw InvalidArgument("unknown family '" + family + "' (expected lottery or stocking)");
    }
};

/// Flat key=value file, one pair per line, '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text)
{
    std::vector<std::pair<std::string, std::string>> kv;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            return std::string{};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw InvalidArgument("config line " + std::to_string(lineno) + ": empty key");
        std::replace(key.begin(), key.end(), '_', '-');
        kv.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return kv;
}

inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

/// Splices config-file pairs in front of the user's own flags so that flags
/// win (every option keeps its last value).
inline std::vector<std::string> merge_config(std::vector<std::string> args)
{
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (!path)
        return args;

    std::optional<std::string> file_command;
    std::vector<std::string> file_args;
    for (auto& [k, v] : read_config_file(*path)) {
        if (k == "command") {
            file_command = v;
            continue;
        }
        if (k == "config")
            continue;
        file_args.push_back("--" + k);
        file_args.push_back(v);
    }

    const auto& names = command_names();
    auto it = std::find_if(args.begin(), args.end(),
                           [&](const std::string& a) { return std::find(names.begin(), names.end(), a) != names.end(); });
    std::vector<std::string> merged;
    if (it == args.end()) {
        if (file_command)
            merged.push_back(*file_command);
        merged.insert(merged.end(), file_args.begin(), file_args.end());
        merged.insert(merged.end(), args.begin(), args.end());
    } else {
        merged.assign(args.begin(), it + 1);
        merged.insert(merged.end(), file_args.begin(), file_args.end());
        merged.insert(merged.end(), it + 1, args.end());
    }
    return merged;
}

namespace detail {

inline std::string point(State s) { return "(" + format_short(s.x) + ", " + format_short(s.y) + ")"; }

inline std::string complex_str(std::complex<double> z)
{
    if (z.imag() == 0.0)
        return format_short(z.real());
    return format_short(z.real()) + (z.imag() < 0 ? "-" : "+") + format_short(std::abs(z.imag())) + "i";
}

inline std::ofstream open_out(const std::string& path, bool binary = false)
{
    std::ofstream f(path, binary ? std::ios::binary | std::ios::out : std::ios::out | std::ios::binary);
    if (!f)
        throw IoError("cannot open '" + path + "' for writing");
    return f;
}

inline const char* pass(bool b) { return b ? "PASS" : "FAIL"; }

inline Orbit2 orbit_for(const RunConfig& c, const MapFamily& f)
{
    if (std::holds_alternative<Params>(f))
        return interior_2cycle(f);
    // stocking: settle from a seed near the x-axis equilibrium
    State seed;
    if (c.x0 && c.y0) {
        seed = {*c.x0, *c.y0};
    } else {
        const auto [xi, eta] = boundary_equilibria(f);
        seed = {xi.x, 1e-3};
    }
    return find_2cycle(f, seed);
}

inline HeteroclinicOptions het_options(const RunConfig& c)
{
    HeteroclinicOptions o;
    o.offset = c.offset;
    o.tol = c.het_tol;
    o.max_iter = c.het_max_iter;
    return o;
}

inline std::vector<Curve> overlay_curves(const RunConfig& c, const MapFamily& f, int rank)
{
    std::vector<Curve> curves;
    if (rank < 0)
        return curves;
    curves.push_back(heteroclinic_curve(f, het_options(c), c.dense ? c.dense : 32));
    if (rank >= 1) {
        PreimageOptions po;
        po.samples_per_segment = c.samples_per_segment;
        auto pre = preimages_curve(f, curves.front(), rank, po);
        curves.insert(curves.end(), pre.begin(), pre.end());
    }
    return curves;
}

} // namespace detail

inline int cmd_simulate(const RunConfig& c, std::ostream& out)
{
    const MapFamily f = c.map_family();
    validate(f);
    if (!c.x0 || !c.y0)
        throw InvalidArgument("simulate needs --x0 and --y0");
    const Trajectory t = iterate(f, {*c.x0, *c.y0}, c.n);
    if (!c.out.empty()) {
        auto file = detail::open_out(c.out);
        write_trajectory_csv(file, t.states);
    }
    out << "simulate: " << describe(f) << " steps=" << (t.states.size() - 1)
        << " final=" << detail::point(t.states.back()) << (t.overflowed ? " overflow" : "") << '\n';
    return t.overflowed ? kExitNumerical : kExitOk;
}

inline int cmd_orbit(const RunConfig& c, std::ostream& out)
{
    const MapFamily f = c.map_family();
    const Orbit2 o = detail::orbit_for(c, f);
    if (!c.out.empty()) {
        auto file = detail::open_out(c.out);
        file << "point,x,y,s\n"
             << "p1," << format_full(o.p1.x) << ',' << format_full(o.p1.y) << ',' << format_full(o.s1) << '\n'
             << "p2," << format_full(o.p2.x) << ',' << format_full(o.p2.y) << ',' << format_full(o.s2) << '\n';
    }
    out << "orbit: " << describe(f) << " p1=" << detail::point(o.p1) << " p2=" << detail::point(o.p2)
        << " s1=" << format_short(o.s1) << " s2=" << format_short(o.s2) << " residual=" << format_short(o.residual)
        << '\n';
    return kExitOk;
}

inline int cmd_stability(const RunConfig& c, std::ostream& out)
{
    const MapFamily f = c.map_family();
    const Orbit2 o = detail::orbit_for(c, f);
    const StabilityReport s = cycle_stability(f, o);
    if (!c.out.empty()) {
        auto file = detail::open_out(c.out);
        file << "trace,det,eig1_re,eig1_im,eig2_re,eig2_im,spectral_radius,jury_pass\n"
             << format_full(s.trace) << ',' << format_full(s.det) << ',' << format_full(s.eigenvalues.first.real())
             << ',' << format_full(s.eigenvalues.first.imag()) << ',' << format_full(s.eigenvalues.second.real())
             << ',' << format_full(s.eigenvalues.second.imag()) << ',' << format_full(s.spectral_radius) << ','
             << (s.jury_pass ? 1 : 0) << '\n';
    }
    out << "stability: " << describe(f) << " eigenvalues=" << detail::complex_str(s.eigenvalues.first) << ","
        << detail::complex_str(s.eigenvalues.second) << " trace=" << format_short(s.trace)
        << " det=" << format_short(s.det) << " jury=" << detail::pass(s.jury_pass) << '\n';
    return kExitOk;
}

inline int cmd_regime(const RunConfig& c, std::ostream& out)
{
    const MapFamily f = c.map_family();
    const auto* p = std::get_if<Params>(&f);
    if (!p)
        throw InvalidArgument("regime needs the lottery family");
    const RegimeReport r = classify_regime(*p, detail::het_options(c));
    out << "regime: " << describe(f) << " regime=" << to_string(r.regime) << " C1=" << detail::pass(r.c1)
        << " C2=" << detail::pass(r.c2) << " C3=" << detail::pass(r.c3)
        << " transverse_xi=" << format_short(r.transverse_xi) << " transverse_eta=" << format_short(r.transverse_eta)
        << " extinction_threshold=" << format_short(r.extinction_threshold) << '\n';
    return kExitOk;
}

inline int cmd_heteroclinic(const RunConfig& c, std::ostream& out)
{
    const MapFamily f = c.map_family();
    HeteroclinicOptions o = detail::het_options(c);
    if (c.x0 && c.y0)
        o.seed = State{*c.x0, *c.y0};
    const HeteroclinicResult r = trace_heteroclinic(f, o);
    if (!c.out.empty()) {
        auto file = detail::open_out(c.out);
        std::vector<Curve> curves{r.orbit};
        if (c.dense > 0 && r.found)
            curves.front() = heteroclinic_curve(f, detail::het_options(c), c.dense);
        write_curves_csv(file, curves);
    }
    static constexpr const char* reasons[] = {"CONVERGED", "MAX_ITER", "LEFT_REGION"};
    out << "heteroclinic: " << describe(f) << " found=" << (r.found ? "true" : "false")
        << " min_dist_to_eta=" << format_short(r.min_dist_to_eta) << " at_iter=" << r.closest_index
        << " exit=" << reasons[static_cast<int>(r.exit_reason)] << '\n';
    return r.found ? kExitOk : kExitNumerical;
}

inline int cmd_preimage(const RunConfig& c, std::ostream& out)
{
    const MapFamily f = c.map_family();
    if (c.target_x || c.target_y) {
        if (!c.target_x || !c.target_y)
            throw InvalidArgument("point pre-images need both --x and --y");
        const auto pre = preimages_point(f, {*c.target_x, *c.target_y});
        if (!c.out.empty()) {
            auto file = detail::open_out(c.out);
            file << "index,x,y\n";
            for (std::size_t k = 0; k < pre.size(); ++k)
                file << k << ',' << format_full(pre[k].x) << ',' << format_full(pre[k].y) << '\n';
        }
        out << "preimage: " << describe(f) << " target=" << detail::point({*c.target_x, *c.target_y})
            << " count=" << pre.size();
        for (State s : pre)
            out << ' ' << detail::point(s);
        out << '\n';
        return kExitOk;
    }
    if (c.rank < 1)
        throw InvalidArgument("--rank must be at least 1");
    const auto curves = detail::overlay_curves(c, f, c.rank);
    if (!c.out.empty()) {
        auto file = detail::open_out(c.out);
        write_curves_csv(file, curves);
    }
    std::size_t pts = 0;
    for (const auto& cv : curves)
        pts += cv.points.size();
    out << "preimage: " << describe(f) << " rank=" << c.rank << " curves=" << curves.size() << " points=" << pts
        << '\n';
    return kExitOk;
}

inline int cmd_basin(const RunConfig& c, std::ostream& out)
{
    const MapFamily f = c.map_family();
    validate_window(c.window, c.nx, c.ny);
    const Orbit2 o = detail::orbit_for(c, f);
    BasinOptions bo;
    bo.max_iter = c.max_iter;
    bo.tol = c.tol;
    bo.axis_tol = c.axis_tol;
    const BasinGrid g = rasterize(f, o, c.window, c.nx, c.ny, bo);

    std::optional<Overlay> ov;
    if (c.overlay_rank >= 0)
        ov = boundary_overlay(g, detail::overlay_curves(c, f, c.overlay_rank));

    if (!c.out_pgm.empty()) {
        auto file = detail::open_out(c.out_pgm, true);
        write_pgm(file, g);
    }
    if (!c.out_ppm.empty()) {
        auto file = detail::open_out(c.out_ppm, true);
        write_ppm(file, g, ov ? &*ov : nullptr);
    }
    const std::string csv = !c.out_csv.empty() ? c.out_csv : c.out;
    if (!csv.empty()) {
        auto file = detail::open_out(csv);
        write_basin_csv(file, g);
    }
    const auto k = g.counts();
    out << "basin: " << describe(f) << " nx=" << g.nx << " ny=" << g.ny;
    for (std::size_t i = 0; i < kCellClassCount; ++i)
        out << ' ' << to_string(static_cast<CellClass>(i)) << '=' << k[i];
    if (ov)
        out << " overlay_cells=" << ov->marked_count;
    out << '\n';
    return kExitOk;
}

inline int cmd_sweep(const RunConfig& c, std::ostream& out)
{
    SweepSpec s;
    s.parameter = parse_sweep_param(c.sweep_param);
    s.start = c.start;
    s.stop = c.stop;
    s.steps = c.steps;
    s.base = c.lottery;
    s.columns = c.columns;
    const auto rows = sweep(s);
    if (!c.out.empty()) {
        auto file = detail::open_out(c.out);
        write_sweep_csv(file, s, rows);
    } else {
        write_sweep_csv(out, s, rows);
    }
    const auto crossings = jury_crossings(rows);
    const auto ok = std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status == "ok"; });
    out << "sweep: parameter=" << to_string(s.parameter) << " rows=" << rows.size() << " ok=" << ok
        << " jury_crossings=" << crossings.size();
    for (double v : crossings)
        out << ' ' << format_short(v);
    out << '\n';
    return kExitOk;
}

/// Structured text report of every applicable check.
inline std::string certify_report(const RunConfig& c)
{
    const MapFamily f = c.map_family();
    const auto* p = std::get_if<Params>(&f);
    if (!p || !p->lottery())
        throw InvalidArgument("certify needs the lottery family with a = 0");
    std::ostringstream r;
    r << "# lrl certification report\n" << describe(f) << '\n';

    const RegimeReport reg = classify_regime(*p, detail::het_options(c));
    r << "regime: " << to_string(reg.regime) << '\n'
      << "transverse_xi: " << format_short(reg.transverse_xi) << '\n'
      << "transverse_eta: " << format_short(reg.transverse_eta) << '\n'
      << "extinction_threshold: " << format_short(reg.extinction_threshold) << '\n';

    r << "C1: " << detail::pass(reg.c1) << '\n';
    r << "C2: " << detail::pass(reg.c2);
    if (p->r2 > 2.0) {
        const BoundaryCycle m = ricker_2cycle(p->r2);
        r << " y1=" << format_short(m.y1) << " y2=" << format_short(m.y2)
          << " r1^2/(y1*y2)=" << format_short(p->r1 * p->r1 / (m.y1 * m.y2));
    }
    r << '\n';
    r << "C3: " << detail::pass(reg.c3);
    try {
        const auto h = trace_heteroclinic(f, detail::het_options(c));
        r << " min_dist_to_eta=" << format_short(h.min_dist_to_eta) << " at_iter=" << h.closest_index;
    } catch (const PreconditionError& e) {
        r << " (" << e.what() << ")";
    }
    r << '\n';

    if (p->r1 != p->r2) {
        const InvariantRegion d = invariant_region(*p);
        r << "absorbing_region: eps=" << format_short(d.eps) << " upper=" << format_short(d.upper) << '\n';
    }

    auto cert = [&](const char* name, Certificate which) {
        r << name << ": ";
        try {
            const auto res = lyapunov_certificate(*p, which, c.samples, c.seed);
            r << detail::pass(res.max_ratio <= res.bound + 1e-12) << " max_ratio=" << format_short(res.max_ratio)
              << " bound=" << format_short(res.bound) << " samples=" << res.samples << '\n';
        } catch (const PreconditionError&) {
            r << "N/A\n";
        }
    };
    cert("lyapunov_x_wins", Certificate::XWins);
    cert("lyapunov_x_extinct", Certificate::XExtinct);

    PersistenceOptions po;
    po.sample_points = c.points;
    po.burn_in = c.burn_in;
    po.horizon = c.horizon;
    po.exclusion_tol = c.exclusion_tol;
    po.seed = c.seed;
    const auto est = persistence_probe(f, po);
    r << "persistence: " << detail::pass(est.liminf_min > 0.0) << " liminf_min=" << format_short(est.liminf_min)
      << " limsup_x=" << format_short(est.limsup_x) << " fraction_above_0.01=" << format_short(est.fraction_above(0.01))
      << " near_axis=" << est.near_axis_count << " points=" << est.sample_points << " burn_in=" << est.burn_in
      << " horizon=" << est.horizon << '\n';

    const auto ex = existence_conditions(*p);
    if (ex.applicable)
        r << "existence: cond1=" << ex.cond1 << " cond2=" << ex.cond2 << " cond3=" << ex.cond3
          << " cond4=" << ex.cond4 << " chain=" << detail::pass(ex.implication_chain_ok) << '\n';
    try {
        const Orbit2 o = interior_2cycle(f);
        const StabilityReport s = cycle_stability(f, o);
        r << "interior_2cycle: p1=" << detail::point(o.p1) << " p2=" << detail::point(o.p2)
          << " eigenvalues=" << detail::complex_str(s.eigenvalues.first) << ","
          << detail::complex_str(s.eigenvalues.second) << " jury=" << detail::pass(s.jury_pass) << '\n';
    } catch (const DomainError& e) {
        r << "interior_2cycle: none (" << e.what() << ")\n";
    }
    return r.str();
}

inline int cmd_certify(const RunConfig& c, std::ostream& out)
{
    const std::string report = certify_report(c);
    if (!c.out.empty()) {
        auto file = detail::open_out(c.out);
        file << report;
    }
    // summary: the regime line plus the three conditions
    std::istringstream in(report);
    std::string line, summary = "certify:";
    while (std::getline(in, line))
        if (line.rfind("regime:", 0) == 0 || line.rfind("C1:", 0) == 0 || line.rfind("C2:", 0) == 0 ||
            line.rfind("C3:", 0) == 0 || line.rfind("persistence:", 0) == 0)
            summary += " " + line.substr(0, line.find(' ', line.find(':') + 2));
    out << summary << '\n';
    return kExitOk;
}

/// Parses `args` (without the program name), runs the command and returns
/// the exit code.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    RunConfig c;
    CLI::App app{"Lottery-Ricker competition map analysis", "lrl"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("--config", config_path, "key=value config file (flags override it)");
    app.add_option("--family", c.family, "lottery | stocking")->check(CLI::IsMember({"lottery", "stocking"}));
    app.add_option("--r1", c.lottery.r1, "growth of species x");
    app.add_option("--r2", c.lottery.r2, "Ricker growth of species y");
    app.add_option("--a", c.lottery.a, "resource shift (0 = lottery model)");
    app.add_option("--s1", c.stocking.s1, "stocking rate");
    app.add_option("--q1", c.stocking.q1);
    app.add_option("--q2", c.stocking.q2);
    app.add_option("--p1", c.stocking.p1);
    app.add_option("--p2", c.stocking.p2);
    app.add_option("--seed", c.seed, "random seed");
    app.add_option("--out", c.out, "output file");

    auto* sim = app.add_subcommand("simulate", "iterate the map and write the trajectory");
    sim->add_option("--x0", c.x0);
    sim->add_option("--y0", c.y0);
    sim->add_option("--n", c.n, "number of steps");

    auto* orb = app.add_subcommand("orbit", "interior period-2 orbit");
    auto* stab = app.add_subcommand("stability", "Jacobian product, eigenvalues and Jury test of the 2-cycle");
    for (auto* s : {orb, stab}) {
        s->add_option("--x0", c.x0, "seed for the stocking family");
        s->add_option("--y0", c.y0);
    }

    app.add_subcommand("regime", "exclusion regime and conditions C1-C3");

    auto add_het = [&](CLI::App* s) {
        s->add_option("--offset", c.offset, "seed offset along the unstable direction");
        s->add_option("--het-tol", c.het_tol, "distance to eta* that counts as arrival");
        s->add_option("--het-max-iter", c.het_max_iter);
        s->add_option("--dense", c.dense, "seeds per fundamental domain for the dense curve (0 = orbit only)");
    };
    auto* het = app.add_subcommand("heteroclinic", "trace the connection from (r1,0) to (0,r2)");
    add_het(het);
    het->add_option("--x0", c.x0, "explicit seed instead of the eigenvector offset");
    het->add_option("--y0", c.y0);

    auto* pre = app.add_subcommand("preimage", "pre-images of a point or of the heteroclinic curve");
    pre->add_option("--x", c.target_x, "target x");
    pre->add_option("--y", c.target_y, "target y");
    pre->add_option("--rank", c.rank, "curve mode: maximum pre-image rank");
    pre->add_option("--samples-per-segment", c.samples_per_segment);
    add_het(pre);

    auto* bas = app.add_subcommand("basin", "basin-of-attraction raster");
    bas->add_option("--xmin", c.window.x_min);
    bas->add_option("--xmax", c.window.x_max);
    bas->add_option("--ymin", c.window.y_min);
    bas->add_option("--ymax", c.window.y_max);
    bas->add_option("--nx", c.nx);
    bas->add_option("--ny", c.ny);
    bas->add_option("--max-iter", c.max_iter);
    bas->add_option("--tol", c.tol);
    bas->add_option("--axis-tol", c.axis_tol);
    bas->add_option("--overlay-rank", c.overlay_rank, "-1 none, 0 heteroclinic curve, k adds pre-images up to rank k");
    bas->add_option("--out-pgm", c.out_pgm);
    bas->add_option("--out-ppm", c.out_ppm);
    bas->add_option("--out-csv", c.out_csv);
    bas->add_option("--samples-per-segment", c.samples_per_segment);
    bas->add_option("--x0", c.x0, "seed for the stocking family's 2-cycle");
    bas->add_option("--y0", c.y0);
    add_het(bas);

    auto* swp = app.add_subcommand("sweep", "one-parameter sweep of the interior 2-cycle");
    swp->add_option("--param", c.sweep_param, "delta | r1 | r2 | a");
    swp->add_option("--start", c.start);
    swp->add_option("--stop", c.stop);
    swp->add_option("--steps", c.steps);
    swp->add_option("--columns", c.columns, "subset of output columns")->delimiter(',');

    auto* cer = app.add_subcommand("certify", "regime, Lyapunov certificates, C1-C3 and persistence report");
    cer->add_option("--samples", c.samples, "Lyapunov certificate samples");
    cer->add_option("--points", c.points, "persistence probe points");
    cer->add_option("--burn-in", c.burn_in);
    cer->add_option("--horizon", c.horizon);
    cer->add_option("--exclusion-tol", c.exclusion_tol);
    add_het(cer);

    try {
        args = merge_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    c.command = app.get_subcommands().front()->get_name();
    try {
        if (c.command == "simulate")
            return cmd_simulate(c, out);
        if (c.command == "orbit")
            return cmd_orbit(c, out);
        if (c.command == "stability")
            return cmd_stability(c, out);
        if (c.command == "regime")
            return cmd_regime(c, out);
        if (c.command == "heteroclinic")
            return cmd_heteroclinic(c, out);
        if (c.command == "preimage")
            return cmd_preimage(c, out);
        if (c.command == "basin")
            return cmd_basin(c, out);
        if (c.command == "sweep")
            return cmd_sweep(c, out);
        if (c.command == "certify")
            return cmd_certify(c, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kExitNumerical;
    }
    err << "error: unknown command\n";
    return kExitUsage;
}

} // namespace lrl::cli
