#include <gtest/gtest.h>

#include <cmath>

#include "tcycle/cycles.hpp"
#include "tcycle/generate.hpp"
#include "tcycle/oracle.hpp"

using namespace tcycle;

namespace {

constexpr double PI = 3.14159265358979323846;

std::pair<double, double> polar(double r, double deg) { return {r * std::cos(deg * PI / 180), r * std::sin(deg * PI / 180)}; }

// outer triangle 0,1,2 around inner triangle 3,4,5; optional spokes
EmbeddedGraph prism(bool spokes, bool middle_ring = false) {
    std::vector<std::pair<double, double>> pts = {polar(4, 90), polar(4, 210), polar(4, 330), polar(1, 90), polar(1, 210), polar(1, 330)};
    std::vector<std::pair<int, int>> e = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
    if (middle_ring) {
        pts.push_back(polar(2.2, 90));
        pts.push_back(polar(2.2, 210));
        pts.push_back(polar(2.2, 330));
        for (auto x : std::vector<std::pair<int, int>>{{6, 7}, {7, 8}, {8, 6}, {3, 6}, {6, 0}}) e.push_back(x);
    } else if (spokes) {
        for (auto x : std::vector<std::pair<int, int>>{{0, 3}, {1, 4}, {2, 5}}) e.push_back(x);
    }
    return embed_checked(pts, e);
}

std::vector<int> cyc(const EmbeddedGraph& g, std::vector<int> vs) {
    std::vector<int> out;
    for (size_t i = 0; i < vs.size(); ++i) out.push_back(g.find_edge(vs[i], vs[(i + 1) % vs.size()]));
    return out;
}

int seg_at(const PolarConfig& pc, const std::vector<Segment>& segs, int angle) {
    int v = pc.vid(pc.R, angle);
    for (const auto& s : segs)
        if (s.u == v || s.v == v) return s.id;
    return -1;
}

}  // namespace

TEST(Concentric, SingleCycleDepthZero) {
    auto g = prism(true);
    EXPECT_EQ(check_concentric(g, {cyc(g, {0, 1, 2})}).depth(), 0);
}

TEST(Concentric, NestedTriangles) {
    auto g = prism(true);
    auto s = check_concentric(g, {cyc(g, {3, 4, 5}), cyc(g, {0, 1, 2})});
    EXPECT_EQ(s.depth(), 1);
    EXPECT_TRUE(s.vertex_in_open(g, 1, 3));
}

TEST(Concentric, SideBySideIsNotNested) {
    std::vector<std::pair<double, double>> pts = {{0, 0}, {1, 0}, {0, 1}, {3, 0}, {4, 0}, {3, 1}};
    auto g = embed_checked(pts, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    try {
        check_concentric(g, {cyc(g, {0, 1, 2}), cyc(g, {3, 4, 5})});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "NotNested");
    }
}

TEST(Concentric, SharedVertexIsNotDisjoint) {
    auto g = prism(true);
    try {
        check_concentric(g, {cyc(g, {0, 3, 4, 1}), cyc(g, {0, 1, 2})});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "NotDisjoint");
    }
}

TEST(Tight, ChordInsideD0) {
    std::vector<std::pair<double, double>> pts = {polar(1, 0), polar(1, 90), polar(1, 180), polar(1, 270)};
    auto g = embed_checked(pts, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
    auto s = check_concentric(g, {cyc(g, {0, 1, 2, 3})});
    EXPECT_FALSE(check_tight(g, s));
}

TEST(Tight, NestedTrianglesWithSpokes) {
    auto g = prism(true);
    EXPECT_TRUE(check_tight(g, check_concentric(g, {cyc(g, {3, 4, 5}), cyc(g, {0, 1, 2})})));
}

TEST(Tight, ExtraRingBetween) {
    auto g = prism(false, true);
    EXPECT_FALSE(check_tight(g, check_concentric(g, {cyc(g, {3, 4, 5}), cyc(g, {0, 1, 2})})));
}

TEST(Isolation, TerminalIsNeverIsolated) {
    auto g = prism(true);
    EXPECT_FALSE(is_isolated(g, {3}, 3, 0));
}

TEST(Isolation, TriangleNeighbourAtZero) {
    auto g = embed_checked({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {1, 2}, {2, 0}});
    EXPECT_TRUE(is_isolated(g, {1}, 0, 0));
    EXPECT_FALSE(is_isolated(g, {1}, 0, 1));
}

// hub 0, triangle ring 1..3, pendant terminals 4..6
EmbeddedGraph wheel_gadget() {
    std::vector<std::pair<double, double>> pts = {{0, 0}, polar(1, 90), polar(1, 210), polar(1, 330), polar(3, 90), polar(3, 210), polar(3, 330)};
    auto g = embed_checked(pts, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}, {1, 4}, {2, 5}, {3, 6}});
    for (int t : {4, 5, 6}) g.set_terminal(t);
    return g;
}

TEST(Isolation, WheelOracleVerdicts) {
    auto g = wheel_gadget();
    EXPECT_TRUE(brute_isolation(g, {4, 5, 6}, 0, 0));
    EXPECT_FALSE(brute_isolation(g, {4, 5, 6}, 0, 1));
}

TEST(Isolation, WheelRadialCriterion) {
    auto g = wheel_gadget();
    EXPECT_TRUE(is_isolated(g, {4, 5, 6}, 0, 0));
    EXPECT_TRUE(is_isolated(g, {4, 5, 6}, 0, 1));  // d^R = 2
    EXPECT_FALSE(is_isolated(g, {4, 5, 6}, 0, 2));
}

TEST(Isolation, CycleSequenceImpliesRadial) {
    for (int seed = 0; seed < 40; ++seed) {
        auto g = gen_random_planar(11, 2, 0.6, seed);
        auto T = g.terminals();
        for (int v : g.vertices())
            for (int l = 0; l < 3; ++l)
                if (brute_isolation(g, T, v, l)) EXPECT_TRUE(is_isolated(g, T, v, l)) << seed << " " << v << " " << l;
    }
}

TEST(Segments, FigureSameType) {
    auto pc = polar_configuration(3, 24, {{2, 14, 1}, {5, 11, 2}});
    auto q = make_configuration(pc.g, pc.cycles, pc.loop, pc.T);
    auto segs = extract_segments(q, 3);
    ASSERT_EQ(segs.size(), 2u);
    EXPECT_EQ(parallel_check(q, 3, segs, 0, 1), 0);
    auto tp = type_partition(q, 3, segs);
    ASSERT_EQ(tp.classes.size(), 1u);
    EXPECT_EQ(tp.classes[0].front(), seg_at(pc, segs, 2));
}

class FigureSegments : public ::testing::Test {
protected:
    // S7 > S8 > S9 > S10 and S1 inside S7; S4 > S5 > S6, S3 and S2 inside S4
    void SetUp() override {
        pc = polar_configuration(4, 48,
                                 {{2, 22, 1}, {4, 14, 2}, {6, 12, 3}, {8, 10, 4}, {16, 20, 2},
                                  {24, 46, 1}, {26, 32, 2}, {28, 30, 3}, {34, 36, 2}, {38, 44, 2}});
        q = make_configuration(pc.g, pc.cycles, pc.loop, pc.T);
        segs = extract_segments(q, 4);
    }
    int S(int angle) { return seg_at(pc, segs, angle); }
    PolarConfig pc;
    CLConfiguration q;
    std::vector<Segment> segs;
};

TEST_F(FigureSegments, TenSegments) { EXPECT_EQ(segs.size(), 10u); }

TEST_F(FigureSegments, S4AndS7DifferByCondition3) {
    EXPECT_EQ(parallel_check(q, 4, segs, S(24), S(2)), 3);
}

TEST_F(FigureSegments, S6AndS2DifferByCondition2) {
    EXPECT_EQ(parallel_check(q, 4, segs, S(28), S(38)), 2);
}

TEST_F(FigureSegments, ChainsAreOrdered) {
    auto tp = type_partition(q, 4, segs);
    EXPECT_TRUE(tp.transitive);
    std::vector<int> chain7 = {S(2), S(4), S(6), S(8)};
    std::vector<int> chain4 = {S(24), S(26), S(28)};
    auto f = build_segment_forest(q, 4, segs);
    for (size_t i = 0; i + 1 < chain7.size(); ++i) EXPECT_TRUE(f.precedes[chain7[i + 1]][chain7[i]]);
    for (size_t i = 0; i + 1 < chain4.size(); ++i) EXPECT_TRUE(f.precedes[chain4[i + 1]][chain4[i]]);
    EXPECT_FALSE(tp.parallel[S(24)][S(2)]);
    EXPECT_FALSE(tp.parallel[S(28)][S(38)]);
}

TEST(SegmentForest, FigureHeights) {
    auto pc = polar_configuration(4, 48,
                                  {{2, 22, 1}, {4, 14, 2}, {6, 12, 3}, {8, 10, 4}, {16, 20, 2},
                                   {26, 46, 2}, {28, 34, 3}, {30, 32, 4}, {38, 44, 3}, {40, 42, 4}});
    auto q = make_configuration(pc.g, pc.cycles, pc.loop, pc.T);
    auto segs = extract_segments(q, 4);
    ASSERT_EQ(segs.size(), 10u);
    auto f = build_segment_forest(q, 4, segs);
    EXPECT_EQ(f.height[seg_at(pc, segs, 2)], 3);
    EXPECT_EQ(f.height[seg_at(pc, segs, 26)], 2);
    for (int leaf : {8, 16, 30, 40}) EXPECT_EQ(f.height[seg_at(pc, segs, leaf)], 0);
    for (int x = 0; x < 10; ++x) EXPECT_TRUE(height_bound_holds(f.height[x], f.subtree[x]));
}

TEST(SegmentForest, IncomparableRoots) {
    auto pc = polar_configuration(2, 24, {{1, 3, 1}, {6, 8, 1}, {12, 14, 1}});
    auto q = make_configuration(pc.g, pc.cycles, pc.loop, pc.T);
    auto f = build_segment_forest(q, 2);
    EXPECT_EQ(f.forest_height, 0);
    for (int p : f.parent) EXPECT_EQ(p, -1);
}

TEST(SegmentForest, ChainOfFour) {
    auto pc = polar_configuration(4, 32, {{2, 20, 1}, {4, 18, 2}, {6, 16, 3}, {8, 14, 4}});
    auto q = make_configuration(pc.g, pc.cycles, pc.loop, pc.T);
    auto f = build_segment_forest(q, 4);
    EXPECT_EQ(f.forest_height, 3);
    int roots = 0;
    for (int p : f.parent) roots += p < 0;
    EXPECT_EQ(roots, 1);
}

TEST(Segments, DisjointFromDj) {
    auto pc = polar_configuration(3, 24, {{2, 14, 3}});
    auto q = make_configuration(pc.g, pc.cycles, pc.loop, pc.T);
    EXPECT_TRUE(extract_segments(q, 2).empty());
    auto s3 = extract_segments(q, 3);
    ASSERT_EQ(s3.size(), 1u);
    EXPECT_NE(s3[0].u, s3[0].v);
}

TEST(Convex, ZeroChordIsNotConvex) {
    auto pc = polar_configuration(2, 24, {{2, 8, 0}});
    auto q = make_configuration(pc.g, pc.cycles, pc.loop, pc.T);
    // a dip along C_0 touches but does not enter int(D_0)
    EXPECT_TRUE(check_convex(q)[0].no_zero_chord);
    // a chord through int(D_0): add a vertex inside C_0 joined to two C_0 vertices
    auto g = pc.g;
    int c = g.add_vertex();
    int e1 = g.add_edge(pc.vid(0, 2), c);
    int e2 = g.add_edge(c, pc.vid(0, 8));
    (void)e1;
    (void)e2;
    std::vector<std::pair<double, double>> pts;
    for (int r = 0; r < pc.R + pc.H + 1; ++r)
        for (int a = 0; a < pc.M; ++a) pts.push_back(polar(r + 1, 360.0 * a / pc.M));
    pts.push_back({0.1, 0.05});
    std::vector<std::pair<int, int>> es;
    for (int e : g.edge_ids()) es.push_back({g.edge(e).u, g.edge(e).v});
    auto g2 = embed_checked(pts, es);
    for (int t : pc.T) g2.set_terminal(t);
    std::vector<int> loop;
    for (int e : pc.loop) {
        int u = pc.g.edge(e).u, v = pc.g.edge(e).v;
        bool on_c0 = u < pc.M && v < pc.M;
        if (!on_c0) loop.push_back(g2.find_edge(u, v));
    }
    loop.push_back(g2.find_edge(pc.vid(0, 2), c));
    loop.push_back(g2.find_edge(c, pc.vid(0, 8)));
    std::vector<std::vector<int>> cycles;
    for (const auto& cy : pc.cycles) {
        std::vector<int> x;
        for (int e : cy) x.push_back(g2.find_edge(pc.g.edge(e).u, pc.g.edge(e).v));
        cycles.push_back(x);
    }
    auto q2 = make_configuration(g2, cycles, loop, pc.T);
    auto v = check_convex(q2);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_FALSE(v[0].no_zero_chord);
    EXPECT_FALSE(v[0].convex());
}

TEST(Convex, TwoChordsAtOneLevel) {
    // a segment that dips to ring 1 twice without leaving D_2
    auto pc = polar_configuration(2, 24, {{2, 12, 2}});
    auto& g = pc.g;
    std::vector<int> walk = {pc.vid(2, 2), pc.vid(1, 2), pc.vid(1, 3), pc.vid(1, 4), pc.vid(2, 4), pc.vid(2, 5), pc.vid(2, 6), pc.vid(1, 6),
                             pc.vid(1, 7), pc.vid(1, 8), pc.vid(2, 8)};
    std::vector<int> loop;
    for (int e : pc.loop) {
        int u = g.edge(e).u, v = g.edge(e).v;
        bool ring2 = u / pc.M == 2 && v / pc.M == 2;
        int au = u % pc.M, av = v % pc.M;
        if (ring2 && std::max(au, av) <= 8) continue;
        loop.push_back(e);
    }
    for (size_t i = 0; i + 1 < walk.size(); ++i) loop.push_back(g.find_edge(walk[i], walk[i + 1]));
    auto q = make_configuration(g, pc.cycles, loop, pc.T);
    auto v = check_convex(q);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_FALSE(v[0].one_chord);
}

TEST(Convex, NestedDipsAreConvex) {
    auto pc = polar_configuration(3, 32, {{2, 20, 1}, {4, 18, 2}, {6, 16, 3}});
    auto q = make_configuration(pc.g, pc.cycles, pc.loop, pc.T);
    auto v = check_convex(q);
    for (const auto& x : v) EXPECT_TRUE(x.convex());
}

TEST(Cost, CountsOffCycleEdges) {
    auto g = prism(true);
    auto s = check_concentric(g, {cyc(g, {3, 4, 5}), cyc(g, {0, 1, 2})});
    EXPECT_EQ(loop_cost(cyc(g, {0, 1, 2}), s), 0);
    EXPECT_EQ(loop_cost(cyc(g, {0, 3, 4, 1}), s), 2);
}
