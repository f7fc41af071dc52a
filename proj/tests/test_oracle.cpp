#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "tcycle/cycles.hpp"
#include "tcycle/generate.hpp"
#include "tcycle/oracle.hpp"

using namespace tcycle;

namespace {

EmbeddedGraph triangle() { return embed_checked({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {1, 2}, {2, 0}}); }
EmbeddedGraph path3() { return embed_checked({{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 2}}); }

// hub 0, `rings` nested triangles with spokes, a pendant terminal outside
EmbeddedGraph nested_triangles(int rings) {
    std::vector<std::pair<double, double>> pts{{0, 0}};
    std::vector<std::pair<int, int>> es;
    for (int r = 0; r < rings; ++r)
        for (int a = 0; a < 3; ++a) {
            double t = 2 * 3.14159265358979 * a / 3 + 0.3;
            pts.push_back({(r + 1) * std::cos(t), (r + 1) * std::sin(t)});
            int id = 1 + 3 * r + a;
            es.push_back({id, 1 + 3 * r + (a + 1) % 3});
            es.push_back({id, r == 0 ? 0 : id - 3});
        }
    double t = 0.3;
    pts.push_back({(rings + 1) * std::cos(t), (rings + 1) * std::sin(t)});
    int term = (int)pts.size() - 1;
    es.push_back({term, 1 + 3 * (rings - 1)});
    auto g = embed_checked(pts, es);
    g.set_terminal(term);
    return g;
}

}  // namespace

TEST(BruteTCycle, Triangle) {
    auto w = brute_t_cycle(triangle(), {0, 1, 2});
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(is_t_loop(triangle(), {0, 1, 2}, w->edge_sets[0]));
}

TEST(BruteTCycle, PathHasNone) { EXPECT_FALSE(brute_t_cycle(path3(), {0, 2}).has_value()); }

TEST(BruteTCycle, GridCorners) {
    auto g = gen_grid(3, 3, 0, 1);
    auto w = brute_t_cycle(g, {0, 8});
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(is_t_loop(g, {0, 8}, w->edge_sets[0]));
}

TEST(BruteTCycle, SizeLimit) {
    auto g = gen_grid(5, 5, 0, 1);
    EXPECT_THROW(brute_t_cycle(g, {0, 24}), Error);
}

TEST(BruteDisjointPaths, SingleEdge) {
    auto g = embed_checked({{0, 0}, {1, 0}}, {{0, 1}});
    EXPECT_TRUE(brute_disjoint_paths(g, {{0, 1}}));
}

TEST(BruteDisjointPaths, EqualEndpointsRejected) { EXPECT_THROW(brute_disjoint_paths(path3(), {{0, 2}, {1, 1}}), Error); }

TEST(BruteDisjointPaths, K4Diagonals) {
    auto k4 = embed_checked({{0, 0}, {4, 0}, {2, 4}, {2, 1}}, {{0, 1}, {1, 2}, {2, 0}, {3, 0}, {3, 1}, {3, 2}});
    EXPECT_TRUE(brute_disjoint_paths(k4, {{0, 2}, {1, 3}}));
}

TEST(BruteDisjointPaths, SharedCentreBlocks) {
    auto star = embed_checked({{0, 2}, {-2, -1}, {2, -1}, {0, 0}, {0, -2}},
                              {{3, 0}, {3, 1}, {3, 2}, {3, 4}});
    EXPECT_FALSE(brute_disjoint_paths(star, {{0, 1}, {2, 4}}));
    EXPECT_TRUE(brute_disjoint_paths(star, {{0, 1}}));
}

TEST(BruteMinor, SingleVertex) {
    EmbeddedGraph one;
    one.ensure_vertex(0);
    EXPECT_TRUE(brute_minor(path3(), one));
}

TEST(BruteMinor, TriangleNotInTree) { EXPECT_FALSE(brute_minor(path3(), triangle())); }

TEST(BruteMinor, K4InGrid) {
    auto k4 = embed_checked({{0, 0}, {4, 0}, {2, 4}, {2, 1}}, {{0, 1}, {1, 2}, {2, 0}, {3, 0}, {3, 1}, {3, 2}});
    auto g = gen_grid(3, 3, 0, 1);
    auto model = brute_minor_model(g, k4);
    ASSERT_TRUE(model.has_value());
    EXPECT_TRUE(verify_minor_model(g, k4, *model));
}

TEST(BruteMinor, RootedModel) {
    // path 0-1-2 contains the edge 0-2 with roots fixed, but not with 1 pinned to a leaf
    EmbeddedGraph e;
    e.ensure_vertex(0);
    e.ensure_vertex(2);
    e.add_edge(0, 2);
    EXPECT_TRUE(rooted_minor_model(path3(), e, {0, 2}).has_value());
    EmbeddedGraph tri = triangle();
    EXPECT_FALSE(rooted_minor_model(path3(), tri, {0, -1, 2}).has_value());
}

TEST(BruteIsolation, TerminalNeverIsolated) {
    auto g = nested_triangles(2);
    auto T = g.terminals();
    for (int l = 0; l < 3; ++l) EXPECT_FALSE(brute_isolation(g, T, T[0], l));
}

TEST(BruteIsolation, WheelRing) {
    auto g = nested_triangles(1);
    EXPECT_TRUE(brute_isolation(g, g.terminals(), 0, 0));
    EXPECT_FALSE(brute_isolation(g, g.terminals(), 0, 1));
}

TEST(BruteIsolation, TwoRings) {
    auto g = nested_triangles(2);
    EXPECT_TRUE(brute_isolation(g, g.terminals(), 0, 1));
    EXPECT_FALSE(brute_isolation(g, g.terminals(), 0, 2));
}

TEST(BruteIsolation, MonotoneInL) {
    for (int seed = 0; seed < 15; ++seed) {
        auto g = gen_random_planar(11, 1, 0.7, seed);
        auto T = g.terminals();
        for (int v : g.vertices()) {
            bool prev = true;
            for (int l = 0; l < 3; ++l) {
                bool now = brute_isolation(g, T, v, l);
                if (!prev) EXPECT_FALSE(now) << seed << " " << v << " " << l;
                prev = now;
            }
        }
    }
}

TEST(BruteTCycle, OrderingsOfDisjointPaths) {
    for (int seed = 0; seed < 60; ++seed) {
        int k = 3 + seed % 2;
        auto g = gen_random_planar(10, k, 0.4, seed);
        auto T = g.terminals();
        std::vector<int> ord = T;
        bool any = false;
        do {
            if (ord[0] != T[0]) break;
            Matching m;
            for (int i = 0; i < k; ++i) {
                int a = ord[i], b = ord[(i + 1) % k];
                m.push_back({std::min(a, b), std::max(a, b)});
            }
            any = any || brute_disjoint_paths(g, m);
        } while (std::next_permutation(ord.begin(), ord.end()));
        EXPECT_EQ(any, brute_t_cycle(g, T).has_value()) << seed;
    }
}

TEST(CheapLoops, SizeLimit) {
    auto pc = polar_configuration(2, 8, {{1, 3, 1}});
    EXPECT_THROW(enumerate_cheap_loops(pc.g, check_concentric(pc.g, pc.cycles), pc.T), Error);
}

TEST(CheapLoops, EqualMinimalCost) {
    auto pc = polar_configuration(2, 8, {{1, 3, 1}});
    auto seq = check_concentric(pc.g, pc.cycles);
    int keep = oracle_limits().cheap_loops;
    oracle_limits().cheap_loops = 40;
    auto loops = enumerate_cheap_loops(pc.g, seq, pc.T);
    oracle_limits().cheap_loops = keep;
    ASSERT_FALSE(loops.empty());
    int c = loop_cost(loops[0].edge_sets[0], seq);
    for (const auto& w : loops) EXPECT_EQ(loop_cost(w.edge_sets[0], seq), c);
    EXPECT_LE(c, loop_cost(pc.loop, seq));
}
