#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "lrl/geometry.hpp"
#include "lrl/sampling.hpp"

using namespace lrl;

TEST(Heteroclinic, ReferenceParameters)
{
    const Params p{2.0, 2.2, 0.0};
    const auto r = trace_heteroclinic(p);
    EXPECT_TRUE(r.found);
    EXPECT_LT(r.min_dist_to_eta, 1e-2);
    EXPECT_LE(r.closest_index, 500u);
    EXPECT_EQ(r.exit_reason, ExitReason::Converged);
    EXPECT_DOUBLE_EQ(r.unstable_eigenvalue, std::exp(0.2));
    EXPECT_GT(r.direction[1], 0.0);
    EXPECT_EQ(r.orbit.points.size(), r.closest_index + 1);
    EXPECT_NEAR(distance(r.orbit.points.back(), {0.0, 2.2}), r.min_dist_to_eta, 1e-15);

    // the direction is an eigenvector of the Jacobian at xi*
    const Mat2 j = jacobian(p, r.xi);
    EXPECT_NEAR(j.a00 * r.direction[0] + j.a01 * r.direction[1], r.unstable_eigenvalue * r.direction[0], 1e-12);
    EXPECT_NEAR(j.a10 * r.direction[0] + j.a11 * r.direction[1], r.unstable_eigenvalue * r.direction[1], 1e-12);
}

TEST(Heteroclinic, InsensitiveToOffset)
{
    for (double off : {1e-5, 1e-4, 1e-3, 1e-2}) {
        HeteroclinicOptions o;
        o.offset = off;
        const auto r = trace_heteroclinic(Params{2.0, 2.2, 0.0}, o);
        EXPECT_TRUE(r.found) << off;
        EXPECT_LT(r.min_dist_to_eta, 1e-4) << off;
    }
}

TEST(Heteroclinic, ExplicitSeed)
{
    HeteroclinicOptions o;
    o.seed = State{2.0, 0.001};
    const auto r = trace_heteroclinic(Params{2.0, 2.2, 0.0}, o);
    EXPECT_TRUE(r.found);
    EXPECT_EQ(r.orbit.points.front(), (State{2.0, 0.001}));
}

TEST(Heteroclinic, ShiftedModel)
{
    const auto r = trace_heteroclinic(Params{2.1, 2.5, 0.1});
    EXPECT_TRUE(r.found);
    EXPECT_LT(r.min_dist_to_eta, 1e-2);
    EXPECT_DOUBLE_EQ(r.xi.x, 2.0);
}

TEST(Heteroclinic, StableAxisHasNoConnection)
{
    EXPECT_THROW(trace_heteroclinic(Params{3.0, 2.0, 0.0}), PreconditionError);
    HeteroclinicOptions o;
    o.offset = 0.0;
    EXPECT_THROW(trace_heteroclinic(Params{}, o), InvalidArgument);
}

TEST(Heteroclinic, MaxIterExit)
{
    HeteroclinicOptions o;
    o.max_iter = 5;
    const auto r = trace_heteroclinic(Params{2.0, 2.2, 0.0}, o);
    EXPECT_FALSE(r.found);
    EXPECT_EQ(r.exit_reason, ExitReason::MaxIter);
}

TEST(HeteroclinicCurve, InvariantUnderTheMap)
{
    const Params p{2.0, 2.2, 0.0};
    const Curve c = heteroclinic_curve(p);
    ASSERT_GT(c.points.size(), 100u);
    EXPECT_EQ(c.points.front(), (State{2.0, 0.0}));
    EXPECT_EQ(c.points.back(), (State{0.0, 2.2}));
    std::size_t far = 0;
    for (std::size_t i = 1; i + 1 < c.points.size(); ++i)
        if (distance_to_polyline(step(p, c.points[i]), c.points) > 1e-2)
            ++far;
    EXPECT_EQ(far, 0u);
}

TEST(Distance, Polyline)
{
    const std::vector<State> pts{{0, 0}, {1, 0}, {1, 1}};
    EXPECT_DOUBLE_EQ(distance_to_polyline({0.5, 0.5}, pts), 0.5);
    EXPECT_DOUBLE_EQ(distance_to_polyline({2, 2}, pts), std::hypot(1.0, 1.0));
    EXPECT_DOUBLE_EQ(distance_to_polyline({3, 0}, {{0, 0}}), 3.0);
    EXPECT_TRUE(std::isinf(distance_to_polyline({0, 0}, {})));
}

TEST(Preimages, RoundTrip)
{
    const Params p{2.0, 2.2, 0.0};
    UniformSampler rng(5);
    for (int k = 0; k < 10000; ++k) {
        const State s{3.0 * rng.next_open(), 4.0 * rng.next_open()};
        const State t = step(p, s);
        if (!(t.x > 0.0 && t.y > 0.0))
            continue;
        const auto pre = preimages_point(p, t);
        ASSERT_LE(pre.size(), 2u);
        double best = INFINITY;
        for (State q : pre) {
            const State back = step(p, q);
            EXPECT_LT(max_norm(back, t), 1e-8 * std::max(1.0, t.x + t.y));
            best = std::min(best, max_norm(q, s));
        }
        ASSERT_LT(best, 1e-8 * std::max(1.0, s.x + s.y)) << s.x << ' ' << s.y;
    }
}

TEST(Preimages, CycleIsMutual)
{
    const Params p{2.0, 2.2, 0.0};
    const Orbit2 o = interior_2cycle(p);
    auto contains = [](const std::vector<State>& v, State s) {
        for (State q : v)
            if (max_norm(q, s) < 1e-10)
                return true;
        return false;
    };
    EXPECT_TRUE(contains(preimages_point(p, o.p1), o.p2));
    EXPECT_TRUE(contains(preimages_point(p, o.p2), o.p1));
}

TEST(Preimages, Degenerate)
{
    const Params p{2.0, 2.2, 0.0};
    EXPECT_THROW(preimages_point(p, {0.0, 1.0}), DomainError);
    EXPECT_THROW(preimages_point(p, {1.0, 0.0}), DomainError);
    EXPECT_THROW(preimages_point(p, {NAN, 1.0}), NonFinite);
    EXPECT_TRUE(preimages_point(p, {2.0, 1.0}).empty());
    EXPECT_TRUE(preimages_point(p, {2.5, 1.0}).empty());
    EXPECT_TRUE(preimages_point(p, {1.0, 100.0}).empty());
    EXPECT_THROW(preimages_point(Params{2.1, 2.5, 0.1}, {1.0, 1.0}), InvalidArgument);
}

TEST(Preimages, OrderedByTotal)
{
    const auto pre = preimages_point(Params{2.0, 2.2, 0.0}, {0.5, 1.0});
    ASSERT_EQ(pre.size(), 2u);
    EXPECT_LT(pre[0].x + pre[0].y, 1.0);
    EXPECT_GT(pre[1].x + pre[1].y, 1.0);
}

TEST(PreimageCurves, MapOntoSource)
{
    const Params p{2.0, 2.2, 0.0};
    const Curve c = heteroclinic_curve(p);
    const auto pre = preimages_curve(p, c, 2);
    ASSERT_FALSE(pre.empty());
    std::set<int> ranks;
    for (const Curve& k : pre) {
        ranks.insert(k.rank);
        EXPECT_EQ(k.source, CurveSource::Preimage);
        EXPECT_GE(k.points.size(), 2u);
        if (k.rank != 1)
            continue;
        for (State q : k.points)
            ASSERT_LT(distance_to_polyline(step(p, q), c.points), 1e-6);
    }
    EXPECT_EQ(ranks, (std::set<int>{1, 2}));
    EXPECT_THROW(preimages_curve(p, c, 0), InvalidArgument);
}

TEST(PreimageCurves, DensifyAndChain)
{
    const auto d = detail::densify({{0, 0}, {1, 0}}, 4);
    ASSERT_EQ(d.size(), 5u);
    EXPECT_DOUBLE_EQ(d[2].x, 0.5);

    std::vector<std::optional<State>> seq{State{0, 0}, State{0.1, 0}, State{0.2, 0}, std::nullopt,
                                          State{0.3, 0}, State{0.4, 0}, State{5.0, 0}, State{5.1, 0}};
    std::vector<Curve> out;
    detail::chain_branch(seq, 1, out);
    ASSERT_EQ(out.size(), 3u);
    EXPECT_EQ(out[0].points.size(), 3u);
    EXPECT_EQ(out[1].points.size(), 2u);
    EXPECT_EQ(out[2].points.size(), 2u);
}
