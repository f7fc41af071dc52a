#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "tcycle/cycles.hpp"
#include "tcycle/decomposition.hpp"
#include "tcycle/generate.hpp"
#include "tcycle/oracle.hpp"

using namespace tcycle;

namespace {

std::vector<int> ring_ids(int r, int ring) {
    std::vector<int> out;
    for (int j = 0; j < ring; ++j) out.push_back(r * ring + j);
    return out;
}

// full polar grid, ring r at radius r+1, every spoke present
EmbeddedGraph polar_annulus(int R, int M) {
    std::vector<std::pair<double, double>> pts;
    std::vector<std::pair<int, int>> es;
    for (int r = 0; r < R; ++r)
        for (int a = 0; a < M; ++a) {
            double t = 2 * 3.14159265358979 * a / M;
            pts.push_back({(r + 1) * std::cos(t), (r + 1) * std::sin(t)});
            es.push_back({r * M + a, r * M + (a + 1) % M});
            if (r > 0) es.push_back({(r - 1) * M + a, r * M + a});
        }
    return embed_checked(pts, es);
}

std::vector<int> alive_only_test(const EmbeddedGraph& g, const std::vector<int>& vs) {
    std::vector<int> out;
    for (int v : vs)
        if (g.has_vertex(v)) out.push_back(v);
    return out;
}

bool answer(const EmbeddedGraph& g, const std::vector<int>& T) { return brute_t_cycle(g, T).has_value(); }

}  // namespace

TEST(Budget, GOfK) {
    EXPECT_EQ(g_of_k(0), 6);
    EXPECT_EQ(g_of_k(1), 10);
    EXPECT_EQ(g_of_k(5), 17);
    EXPECT_EQ(g_of_k(3, 1, 1), 3);
    EXPECT_EQ(make_budget(5).five_g1(), 86);
}

TEST(Punctures, SingleTerminal) {
    auto g = gen_grid(3, 3, 1, 1);
    EXPECT_EQ(initial_punctures(g, g.terminals()).hole_count(), 1);
}

TEST(Punctures, TriangleTwoTerminals) {
    auto g = embed_checked({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {1, 2}, {2, 0}});
    auto p = initial_punctures(g, {1, 2});
    EXPECT_EQ(p.hole_count(), 2);
    EXPECT_EQ(p.boundary_vertices, (std::vector<int>{1, 2}));
}

TEST(Punctures, GeneratorFiveTerminals) {
    auto g = gen_random_planar(30, 5, 0.5, 4);
    EXPECT_EQ(initial_punctures(g, g.terminals()).hole_count(), 5);
}

TEST(Punctures, IsolatedTerminalRejected) {
    auto g = embed_checked({{0, 0}, {1, 0}, {5, 5}}, {{0, 1}});
    EXPECT_THROW(initial_punctures(g, {2}), Error);
}

TEST(CutReduction, MergesClosestHoles) {
    auto g = gen_grid(3, 6, 0, 1);
    // holes at 0, 1 (adjacent) and far corner 17
    auto p = make_instance(g, {{0}, {1}, {17}});
    auto r = cut_reduction(p, IsolationBudget{1});
    ASSERT_EQ(r.children.size(), 1u);
    EXPECT_EQ(r.children[0].hole_count(), 2);
    EXPECT_TRUE(r.removed.empty());
    EXPECT_EQ(r.children[0].holes[0], (std::vector<int>{0, 1}));
}

TEST(CutReduction, NeedsThreeHoles) {
    auto g = gen_grid(3, 3, 0, 1);
    try {
        cut_reduction(make_instance(g, {{0}, {8}}), IsolationBudget{1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "HoleCountTooSmall");
    }
}

TEST(CutReduction, RecursionBottomsOut) {
    for (int seed = 0; seed < 10; ++seed) {
        auto g = gen_random_planar(40, 7, 0.5, seed);
        auto p = initial_punctures(g, g.terminals());
        int leaves = 1;
        while (p.hole_count() >= 3) {
            int before = p.hole_count();
            auto r = cut_reduction(p, IsolationBudget{2});
            ASSERT_LE(r.children.size(), 3u);
            p = r.children[0];
            EXPECT_LT(p.hole_count(), before);
        }
        EXPECT_LE(p.hole_count(), 2);
        EXPECT_LE(leaves, 4 * 7 + 8);
        for (int t : g.terminals()) EXPECT_TRUE(std::binary_search(p.boundary_vertices.begin(), p.boundary_vertices.end(), t));
    }
}

TEST(Layers, BoundaryOnly) {
    auto g = embed_checked({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {1, 2}, {2, 0}});
    auto L = layer_partition(make_instance(g, {{0, 1, 2}}));
    ASSERT_EQ(L.size(), 1u);
}

TEST(Layers, WheelHubIsLayerOne) {
    auto g = gen_nested_rings(1, 5, 0, true, 1);
    auto L = layer_partition(make_instance(g, {ring_ids(0, 5)}));
    ASSERT_EQ(L.size(), 2u);
    EXPECT_EQ(L[1], (std::vector<int>{5}));
}

TEST(Layers, NestedRingsDepthThree) {
    auto g = gen_nested_rings(3, 4, 0, true, 7);
    auto L = layer_partition(make_instance(g, {ring_ids(2, 4)}));
    EXPECT_EQ(L.size(), 4u);
}

TEST(Layers, WrongHoleCount) {
    auto g = gen_grid(3, 3, 0, 1);
    EXPECT_THROW(layer_partition(make_instance(g, {{0}, {8}})), Error);
}

TEST(OnePunctured, NothingBeyondG) {
    auto g = gen_nested_rings(3, 4, 0, true, 2);
    auto out = remove_one_punctured(make_instance(g, {ring_ids(2, 4)}), IsolationBudget{3});
    EXPECT_EQ(out.num_vertices(), g.num_vertices());
}

TEST(OnePunctured, DeepRingsLoseInnerTwoAndHub) {
    int gk = 2;
    auto g = gen_nested_rings(gk + 3, 4, 0, true, 5);
    auto out = remove_one_punctured(make_instance(g, {ring_ids(gk + 2, 4)}), IsolationBudget{gk});
    for (int v : g.vertices()) {
        bool inner = v < 2 * 4 || v == g.num_vertices() - 1;
        EXPECT_EQ(out.has_vertex(v), !inner) << v;
    }
}

TEST(OnePunctured, PreservesAnswers) {
    for (int seed = 0; seed < 40; ++seed) {
        auto g = gen_nested_rings(3, 4, 2 + seed % 2, seed % 2 == 0, seed);
        auto T = g.terminals();
        auto out = remove_one_punctured(make_instance(g, {ring_ids(2, 4)}), IsolationBudget{1});
        EXPECT_EQ(answer(g, T), answer(out, T)) << seed;
    }
}

TEST(TwoPunctured, NarrowAnnulusUntouched) {
    auto g = polar_annulus(3, 6);
    TwoPuncturedTrace tr;
    auto out = remove_two_punctured(make_instance(g, {ring_ids(0, 6), ring_ids(2, 6)}), IsolationBudget{2}, &tr);
    EXPECT_EQ(out.num_vertices(), g.num_vertices());
    EXPECT_TRUE(tr.short_case);
}

TEST(TwoPunctured, ShortCaseMatchesMergedOnePunctured) {
    auto g = polar_annulus(5, 8);
    IsolationBudget b{1};
    auto inst = make_instance(g, {ring_ids(0, 8), ring_ids(4, 8)});
    TwoPuncturedTrace tr;
    auto out = remove_two_punctured(inst, b, &tr);
    ASSERT_TRUE(tr.short_case);
    std::vector<int> merged = inst.boundary_vertices;
    merged.insert(merged.end(), tr.A.vertices.begin(), tr.A.vertices.end());
    auto ref = remove_one_punctured(make_instance(g, {merged}), b);
    EXPECT_EQ(serialize(out), serialize(ref));
}

TEST(TwoPunctured, LongCaseCutsTwice) {
    int R = 10, M = 12;
    auto g = polar_annulus(R, M);
    IsolationBudget b{1};
    auto inst = make_instance(g, {ring_ids(0, M), ring_ids(R - 1, M)});
    TwoPuncturedTrace tr;
    auto out = remove_two_punctured(inst, b, &tr);
    ASSERT_FALSE(tr.short_case);
    EXPECT_EQ((int)tr.A.vertices.size(), R);
    ASSERT_GE((int)tr.B.vertices.size(), R);
    for (size_t i = 1; i + 1 < tr.B.vertices.size(); ++i)
        EXPECT_EQ(std::count(tr.A.vertices.begin(), tr.A.vertices.end(), tr.B.vertices[i]), 0);
    // B sits opposite A
    int a_ang = tr.A.vertices[R / 2] % M, b_ang = tr.B.vertices[R / 2] % M;
    int gap = std::abs(a_ang - b_ang);
    EXPECT_GE(std::min(gap, M - gap), M / 2 - 1);
    EXPECT_GT(tr.removed.size(), 0u);
    auto d = radial_multi(out, compute_faces(out), alive_only_test(out, inst.boundary_vertices));
    for (int v : out.vertices()) EXPECT_LE(d[v], b.four_g()) << v;
}

TEST(TwoPunctured, DeepAnnulusBruteCheck) {
    auto g = polar_annulus(4, 3);
    std::vector<int> inner = ring_ids(0, 3), outer = ring_ids(3, 3);
    IsolationBudget b{1};
    auto out = remove_two_punctured(make_instance(g, {inner, outer}), b);
    std::vector<int> bnd = inner;
    bnd.insert(bnd.end(), outer.begin(), outer.end());
    for (int v : out.vertices())
        if (!std::count(bnd.begin(), bnd.end(), v)) EXPECT_FALSE(brute_isolation(out, bnd, v, b.four_g()));
}

TEST(TwoPunctured, SeparateComponents) {
    auto g = embed_checked({{0, 0}, {1, 0}, {0, 1}, {5, 0}, {6, 0}, {5, 1}}, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    try {
        remove_two_punctured(make_instance(g, {{0}, {3}}), IsolationBudget{1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "NoConnectingCurve");
    }
}

TEST(Reed, FixpointWithoutIsolatedVertices) {
    auto g = gen_grid(3, 4, 3, 2);
    auto T = g.terminals();
    auto r = reed_pipeline(g, T, make_budget(3));
    EXPECT_EQ(serialize(r.graph), serialize(g));
    EXPECT_TRUE(r.report.removed.empty());
    for (int t : T) EXPECT_TRUE(std::binary_search(r.U.begin(), r.U.end(), t));
}

TEST(Reed, DeepGridPreservesAnswer) {
    for (int seed = 0; seed < 20; ++seed) {
        auto g = gen_grid(3, 4, 3, seed);
        auto T = g.terminals();
        auto r = reed_pipeline(g, T, IsolationBudget{1});
        EXPECT_EQ(answer(g, T), answer(r.graph, T)) << seed;
    }
    auto g = gen_grid(4, 8, 3, 1);
    auto r = reed_pipeline(g, g.terminals(), IsolationBudget{1});
    EXPECT_LT(r.graph.num_vertices(), g.num_vertices());
}

TEST(Reed, NoDeepConcentricOutsideU) {
    for (int seed = 0; seed < 10; ++seed) {
        auto g = gen_random_planar(13, 3, 0.7, seed);
        IsolationBudget b{1};
        auto r = reed_pipeline(g, g.terminals(), b);
        auto rest = remove_vertices(r.graph, r.U);
        EXPECT_LT(brute_max_concentric(rest, b.four_g() + 1), b.four_g() + 1);
    }
}

TEST(Reed, ReportedDeletionsWereIsolated) {
    for (int seed = 0; seed < 10; ++seed) {
        auto g = gen_grid(4, 7, 3, seed);
        auto T = g.terminals();
        auto r = reed_pipeline(g, T, IsolationBudget{1});
        auto d = radial_multi(g, compute_faces(g), T);
        for (const auto& x : r.report.removed) EXPECT_GT(d[x.vertex], 1) << x.reason;
    }
}

TEST(Reed, DisconnectedTerminals) {
    auto g = embed_checked({{0, 0}, {1, 0}, {0, 1}, {5, 0}, {6, 0}, {5, 1}}, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    auto r = reed_pipeline(g, {0, 3}, IsolationBudget{1});
    EXPECT_TRUE(r.report.terminals_disconnected);
}

TEST(Reed, SerialAndParallelAgree) {
    auto g = gen_grid(5, 10, 4, 3);
    auto a = reed_pipeline(g, g.terminals(), IsolationBudget{1}, false);
    auto b = reed_pipeline(g, g.terminals(), IsolationBudget{1}, true);
    EXPECT_EQ(serialize(a.graph), serialize(b.graph));
    EXPECT_EQ(a.U, b.U);
}

TEST(Quadratic, IdentityWithoutIsolated) {
    auto g = gen_grid(3, 3, 2, 1);
    EXPECT_EQ(quadratic_remover(g, g.terminals(), IsolationBudget{5}).num_vertices(), 9);
}

TEST(Quadratic, WheelHubDeleted) {
    auto g = gen_nested_rings(2, 4, 2, true, 3);
    auto out = quadratic_remover(g, g.terminals(), IsolationBudget{1});
    EXPECT_FALSE(out.has_vertex(8));
}

TEST(Quadratic, PreservesAnswers) {
    for (int seed = 0; seed < 60; ++seed) {
        auto g = gen_random_planar(12, 2 + seed % 3, 0.6, seed);
        auto T = g.terminals();
        auto out = quadratic_remover(g, T, IsolationBudget{1});
        EXPECT_EQ(answer(g, T), answer(out, T)) << seed;
    }
}

TEST(IsolationBatch, SerialParallelAndSingle) {
    auto g = gen_grid(6, 8, 3, 2);
    auto T = g.terminals();
    auto vs = g.vertices();
    auto s = isolation_batch_serial(g, T, vs, 2);
    auto p = isolation_batch_parallel(g, T, vs, 2);
    EXPECT_EQ(s, p);
    for (size_t i = 0; i < vs.size(); ++i) EXPECT_EQ((bool)s[i], is_isolated(g, T, vs[i], 2));
}
