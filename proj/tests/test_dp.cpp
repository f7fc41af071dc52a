#include <gtest/gtest.h>
#include <algorithm>
#include <random>

#include "tcycle/dp.hpp"
#include "tcycle/generate.hpp"
#include "tcycle/oracle.hpp"

using namespace tcycle;

namespace {
EmbeddedGraph parse(const char* s) { return parse_graph_string(s); }

const char* kTriangle = "v 1\nv 2\nv 3\ne 0 1 2\ne 1 2 3\ne 2 3 1\nrot 1 0 2\nrot 2 1 0\nrot 3 2 1\n";
const char* kPath = "v 1\nv 2\nv 3\ne 0 1 2\ne 1 2 3\nrot 1 0\nrot 2 0 1\nrot 3 1\n";
}  // namespace

TEST(TCycleDp, TriangleAllTerminals) {
    auto g = parse(kTriangle);
    auto w = solve_t_cycle(g, {1, 2, 3});
    ASSERT_TRUE(w);
    EXPECT_TRUE(is_t_loop(g, {1, 2, 3}, w->edge_sets[0]));
}

TEST(TCycleDp, PathHasNoLoop) {
    auto g = parse(kPath);
    EXPECT_FALSE(solve_t_cycle(g, {1, 3}));
}

TEST(TCycleDp, AgreesWithBruteOnRandomPlanar) {
    for (uint64_t s = 0; s < 300; ++s) {
        int n = 4 + (int)(s % 9);
        int k = (int)(s % 6);
        if (k > n) k = n;
        auto g = gen_random_planar(n, k, 0.4 + 0.1 * (s % 5), s);
        auto T = g.terminals();
        bool b = brute_t_cycle(g, T).has_value();
        auto d = solve_t_cycle(g, T);
        ASSERT_EQ(b, d.has_value()) << "seed " << s;
        if (d) ASSERT_TRUE(is_t_loop(g, T, d->edge_sets[0]));
        auto d2 = solve_t_cycle(g, T, make_nice(build_td(g, TdMode::RadialLayer)));
        ASSERT_EQ(b, d2.has_value()) << "radial seed " << s;
    }
}

TEST(DisjointPathsDp, StarCenterConsumed) {
    auto g = parse("v 0\nv 1\nv 2\nv 3\ne 0 0 1\ne 1 0 2\ne 2 0 3\nrot 0 0 1 2\nrot 1 0\nrot 2 1\nrot 3 2\n");
    EXPECT_FALSE(solve_disjoint_paths(g, {{1, 2}, {3, 0}}));
    EXPECT_TRUE(solve_disjoint_paths(g, {}));
    EXPECT_TRUE(solve_disjoint_paths(g, {{1, 2}}));
}

TEST(DisjointPathsDp, AgreesWithBrute) {
    for (uint64_t s = 0; s < 300; ++s) {
        int n = 4 + (int)(s % 9);
        auto g = gen_random_planar(n, 0, 0.3 + 0.1 * (s % 6), 1000 + s);
        std::mt19937_64 rng(s);
        std::vector<int> vs = g.vertices();
        std::shuffle(vs.begin(), vs.end(), rng);
        int pairs = 1 + (int)(s % 3);
        Matching m;
        for (int i = 0; i < pairs && 2 * i + 1 < (int)vs.size(); ++i) m.push_back({vs[2 * i], vs[2 * i + 1]});
        ASSERT_EQ(brute_disjoint_paths(g, m), solve_disjoint_paths(g, m)) << "seed " << s;
    }
}

TEST(MCycleDp, EdgePairGivesCycle) {
    auto g = parse("v 1\nv 2\ne 0 1 2\nrot 1 0\nrot 2 0\n");
    EXPECT_TRUE(solve_m_cycle(g, {1, 2}, {{1, 2}}));
    EXPECT_TRUE(solve_m_cycle(g, {1, 2}, {}));
}
