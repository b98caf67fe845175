#include <cstdlib>

#include <gtest/gtest.h>

#include "lrl/basin.hpp"
#include "lrl/sampling.hpp"

using namespace lrl;

namespace {

const Params kRef{2.0, 2.2, 0.0};

// Plain forward iteration: which cycle point do even iterates end up at?
CellClass brute_phase(const Params& p, const Orbit2& o, State s)
{
    for (int k = 0; k < 20000; ++k)
        s = step(p, s);
    if (max_norm(s, o.p1) < 1e-6)
        return CellClass::PhaseA;
    if (max_norm(s, o.p2) < 1e-6)
        return CellClass::PhaseB;
    return CellClass::Undecided;
}

} // namespace

TEST(ClassifyPoint, CyclePoints)
{
    const Orbit2 o = interior_2cycle(kRef);
    const auto a = classify_point(kRef, o, o.p1);
    EXPECT_EQ(a.cls, CellClass::PhaseA);
    EXPECT_EQ(a.iters, 4u);
    EXPECT_EQ(classify_point(kRef, o, o.p2).cls, CellClass::PhaseB);
    EXPECT_EQ(classify_point(kRef, o, step(kRef, o.p2)).cls, CellClass::PhaseA);
}

TEST(ClassifyPoint, GenericPointDecided)
{
    const Orbit2 o = interior_2cycle(kRef);
    const auto c = classify_point(kRef, o, {1.0, 0.5});
    EXPECT_TRUE(is_phase(c.cls));
    EXPECT_EQ(c.cls, brute_phase(kRef, o, {1.0, 0.5}));
}

TEST(ClassifyPoint, InvalidAndAxes)
{
    const Orbit2 o = interior_2cycle(kRef);
    EXPECT_EQ(classify_point(kRef, o, {0.0, 0.0}).cls, CellClass::Invalid);
    EXPECT_EQ(classify_point(kRef, o, {-1.0, 1.0}).cls, CellClass::Invalid);
    EXPECT_EQ(classify_point(kRef, o, {0.0, 1.0}).cls, CellClass::XExtinct);
    EXPECT_EQ(classify_point(kRef, o, {1.0, 0.0}).cls, CellClass::YExtinct);
}

TEST(ClassifyPoint, AgreesWithBruteForce)
{
    const Orbit2 o = interior_2cycle(kRef);
    UniformSampler rng(9);
    for (int k = 0; k < 300; ++k) {
        const State s{3.0 * rng.next_open(), 4.0 * rng.next_open()};
        const auto c = classify_point(kRef, o, s);
        if (is_phase(c.cls)) {
            EXPECT_EQ(c.cls, brute_phase(kRef, o, s)) << s.x << ' ' << s.y;
        }
    }
}

TEST(ClassifyPoint, PhaseCoherence)
{
    const Orbit2 o = interior_2cycle(kRef);
    UniformSampler rng(42);
    int decided = 0;
    for (int k = 0; k < 1000; ++k) {
        const State s{3.0 * rng.next_open(), 4.0 * rng.next_open()};
        const CellClass c0 = classify_point(kRef, o, s).cls;
        const CellClass c1 = classify_point(kRef, o, step(kRef, s)).cls;
        const CellClass c2 = classify_point(kRef, o, step(kRef, step(kRef, s))).cls;
        if (is_phase(c0) && is_phase(c2)) {
            EXPECT_EQ(c0, c2);
        }
        if (is_phase(c0) && is_phase(c1)) {
            EXPECT_EQ(c1, swapped_phase(c0));
            ++decided;
        }
    }
    EXPECT_GT(decided, 990);
}

TEST(Rasterize, ReferenceWindow)
{
    const Orbit2 o = interior_2cycle(kRef);
    const BasinGrid g = rasterize(kRef, o, Window{}, 200, 200);
    const auto k = g.counts();
    const std::size_t phases = k[0] + k[1];
    EXPECT_GE(static_cast<double>(phases), 0.99 * 40000);
    EXPECT_GE(static_cast<double>(k[0]), 0.10 * static_cast<double>(phases));
    EXPECT_GE(static_cast<double>(k[1]), 0.10 * static_cast<double>(phases));
    EXPECT_EQ(k[5], 0u);
    EXPECT_DOUBLE_EQ(g.center(0, 0).x, 0.0075);
    EXPECT_DOUBLE_EQ(g.center(0, 0).y, 0.01);
}

TEST(Rasterize, ShiftedModelHasTwoPhases)
{
    const Params p{2.1, 2.5, 0.1};
    const BasinGrid g = rasterize(p, interior_2cycle(p), Window{}, 80, 80);
    const auto k = g.counts();
    EXPECT_GT(k[0], 0u);
    EXPECT_GT(k[1], 0u);
    EXPECT_GE(phase_components(g).total(), 3u);
}

TEST(Rasterize, XWinsGivesYExtinct)
{
    const Params p{3.0, 2.0, 0.0};
    const Orbit2 none;
    const Window w;
    for (int j = 0; j < 30; ++j)
        for (int i = 0; i < 30; ++i) {
            const State s{w.x_max * (i + 0.5) / 30, w.y_max * (j + 0.5) / 30};
            ASSERT_EQ(classify_point(p, none, s).cls, CellClass::YExtinct) << s.x << ' ' << s.y;
        }
    EXPECT_THROW(rasterize(p, interior_2cycle(kRef), w, 30, 30), StaleOrbit);
}

TEST(Rasterize, ExtinctionRegime)
{
    const Params p{0.4, 2.0, 0.0};
    const Orbit2 o = interior_2cycle(kRef);
    UniformSampler rng(1);
    for (int k = 0; k < 300; ++k) {
        const State s{3.0 * rng.next_open(), 4.0 * rng.next_open()};
        EXPECT_EQ(classify_point(p, o, s).cls, CellClass::XExtinct);
    }
}

TEST(Rasterize, Deterministic)
{
    const Orbit2 o = interior_2cycle(kRef);
    const BasinGrid a = rasterize(kRef, o, Window{}, 60, 60);
    setenv("LRL_THREADS", "1", 1);
    const BasinGrid b = rasterize(kRef, o, Window{}, 60, 60);
    unsetenv("LRL_THREADS");
    EXPECT_EQ(a.cells, b.cells);
    EXPECT_EQ(a.iters, b.iters);
}

TEST(Rasterize, UndecidedShrinksWithIterations)
{
    const Orbit2 o = interior_2cycle(kRef);
    std::size_t prev = SIZE_MAX;
    for (std::size_t it : {2500u, 5000u, 10000u}) {
        BasinOptions opt;
        opt.max_iter = it;
        const auto k = rasterize(kRef, o, Window{}, 100, 100, opt).counts();
        const std::size_t u = k[static_cast<std::size_t>(CellClass::Undecided)];
        EXPECT_LE(u, prev);
        prev = u;
    }
}

TEST(Rasterize, Validation)
{
    const Orbit2 o = interior_2cycle(kRef);
    EXPECT_THROW(rasterize(kRef, o, Window{1, 0, 0, 4}, 10, 10), InvalidArgument);
    EXPECT_THROW(rasterize(kRef, o, Window{}, 1, 10), InvalidArgument);
    EXPECT_THROW(rasterize(kRef, o, Window{0, NAN, 0, 4}, 10, 10), InvalidArgument);
    BasinOptions opt;
    opt.tol = 0.0;
    EXPECT_THROW(rasterize(kRef, o, Window{}, 10, 10, opt), InvalidArgument);
}

TEST(Overlay, EmptyCurves)
{
    const Orbit2 o = interior_2cycle(kRef);
    const BasinGrid g = rasterize(kRef, o, Window{}, 20, 20);
    const Overlay ov = boundary_overlay(g, {});
    EXPECT_EQ(ov.marked_count, 0u);
    for (auto m : ov.marked)
        EXPECT_EQ(m, 0);
}

TEST(Overlay, HeteroclinicCurveSeparatesComponents)
{
    const Orbit2 o = interior_2cycle(kRef);
    const BasinGrid g = rasterize(kRef, o, Window{}, 200, 200);
    const Overlay ov = boundary_overlay(g, {heteroclinic_curve(kRef)});
    EXPECT_GT(ov.marked_count, 100u);
    const auto blocked = phase_components(g, &ov);
    EXPECT_GE(blocked.total(), 2u);
    EXPECT_GE(blocked.phase_a, 1u);
    EXPECT_GE(blocked.phase_b, 1u);
    // the curve runs from (2, 0) to (0, 2.2); its cell at the midpoint is marked
    EXPECT_TRUE(ov.at(0, static_cast<std::size_t>(2.2 / g.dy())) ||
                ov.at(0, static_cast<std::size_t>(2.2 / g.dy()) - 1));
}

TEST(Overlay, AllInvalidGrid)
{
    BasinGrid g;
    g.nx = g.ny = 10;
    g.cells.assign(100, CellClass::Invalid);
    g.iters.assign(100, 0);
    Curve c;
    c.points = {{0.0, 0.0}, {3.0, 4.0}};
    const Overlay ov = boundary_overlay(g, {c});
    EXPECT_GE(ov.marked_count, 10u);
    EXPECT_LE(ov.marked_count, 28u);
    EXPECT_TRUE(ov.at(0, 0));
    EXPECT_TRUE(ov.at(9, 9));
    EXPECT_EQ(ov.undecided, 0u);
    EXPECT_EQ(phase_components(g).total(), 0u);
}

TEST(Components, FloodFill)
{
    BasinGrid g;
    g.nx = 4;
    g.ny = 2;
    using C = CellClass;
    g.cells = {C::PhaseA, C::PhaseA, C::PhaseB, C::PhaseA, C::PhaseB, C::PhaseA, C::PhaseB, C::Undecided};
    const auto pc = phase_components(g);
    EXPECT_EQ(pc.phase_a, 2u);
    EXPECT_EQ(pc.phase_b, 2u);
}
