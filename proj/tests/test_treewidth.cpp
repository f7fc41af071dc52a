#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "tcycle/generate.hpp"
#include "tcycle/treewidth.hpp"

using namespace tcycle;

namespace {

EmbeddedGraph path(int n) {
    std::vector<std::pair<double, double>> pts;
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) {
        pts.push_back({(double)i, 0});
        if (i) es.push_back({i - 1, i});
    }
    return embed_checked(pts, es);
}

EmbeddedGraph cycle(int n) {
    std::vector<std::pair<double, double>> pts;
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) {
        double t = 2 * 3.14159265358979 * i / n;
        pts.push_back({std::cos(t), std::sin(t)});
        es.push_back({i, (i + 1) % n});
    }
    return embed_checked(pts, es);
}

std::vector<int> random_tree(int n, std::mt19937_64& rng) {
    std::vector<int> parent(n, -1);
    for (int v = 1; v < n; ++v) parent[v] = (int)(rng() % v);
    return parent;
}

int lca(const std::vector<int>& parent, int a, int b) {
    std::set<int> up;
    for (int x = a; x >= 0; x = parent[x]) up.insert(x);
    for (int x = b; x >= 0; x = parent[x])
        if (up.count(x)) return x;
    return -1;
}

// repeated pairwise LCA until nothing new appears
std::set<int> closure_by_hand(const std::vector<int>& parent, std::set<int> L) {
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<int> cur(L.begin(), L.end());
        for (int a : cur)
            for (int b : cur) grew |= L.insert(lca(parent, a, b)).second;
    }
    return L;
}

}  // namespace

TEST(Validate, SingleBag) {
    auto g = cycle(5);
    TreeDecomposition td;
    td.add_bag(g.vertices());
    EXPECT_EQ(validate(g, td), 4);
}

TEST(Validate, PathOfPairs) {
    auto g = path(5);
    TreeDecomposition td;
    for (int i = 0; i + 1 < 5; ++i) {
        int b = td.add_bag({i, i + 1});
        if (b) td.link(b - 1, b);
    }
    EXPECT_EQ(validate(g, td), 1);
}

TEST(Validate, MissingEdge) {
    auto g = path(3);
    TreeDecomposition td;
    td.add_bag({0, 1});
    td.add_bag({2});
    td.link(0, 1);
    try {
        validate(g, td);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "EdgeUncovered");
    }
}

TEST(Validate, BrokenSubtree) {
    auto g = path(3);
    TreeDecomposition td;
    td.add_bag({0, 1});
    td.add_bag({1, 2});
    td.add_bag({0});
    td.link(0, 1);
    td.link(1, 2);
    try {
        validate(g, td);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), "VertexSubtreeDisconnected");
    }
}

TEST(Build, TreeHasWidthOne) { EXPECT_EQ(validate(path(8), build_td(path(8))), 1); }

TEST(Build, CycleHasWidthTwo) { EXPECT_EQ(validate(cycle(7), build_td(cycle(7))), 2); }

TEST(Build, GridBaseline) {
    auto g = gen_grid(4, 4, 0, 1);
    int w = validate(g, build_td(g));
    EXPECT_LE(w, 7);
    EXPECT_GE(w, 4);
}

TEST(Build, RadialModeIsValid) {
    for (int seed = 0; seed < 20; ++seed) {
        auto g = gen_random_planar(30, 0, 0.5, seed);
        EXPECT_NO_THROW(validate(g, build_td(g, TdMode::RadialLayer)));
    }
    auto g = gen_nested_rings(4, 6, 0, true, 1);
    EXPECT_NO_THROW(validate(g, build_td(g, TdMode::RadialLayer)));
}

TEST(Nice, KeepsWidth) {
    for (int seed = 0; seed < 30; ++seed) {
        auto g = gen_random_planar(25, 0, 0.5, seed);
        auto td = build_td(g);
        int w = validate(g, td);
        auto nice = make_nice(td);
        EXPECT_EQ(validate_nice(g, nice), w);
        EXPECT_LE(nice.size(), 4 * (w + 2) * g.num_vertices() + 4);
    }
}

TEST(Nice, EmptyBag) {
    TreeDecomposition td;
    td.add_bag({});
    auto nice = make_nice(td);
    EXPECT_GE(nice.size(), 1);
    EXPECT_EQ(nice.kind[nice.postorder()[0]], NodeKind::Leaf);
}

TEST(Nice, PostorderChildrenFirst) {
    auto g = gen_grid(3, 5, 0, 1);
    auto nice = nice_decomposition(g);
    std::vector<int> pos(nice.size());
    auto po = nice.postorder();
    ASSERT_EQ((int)po.size(), nice.size());
    for (int i = 0; i < (int)po.size(); ++i) pos[po[i]] = i;
    for (int v = 0; v < nice.size(); ++v)
        for (int c : nice.children[v]) EXPECT_LT(pos[c], pos[v]);
}

TEST(LcaClosure, Examples) {
    // root 0 with children 1, 2; leaves 3 under 1 and 4 under 2
    std::vector<int> parent{-1, 0, 0, 1, 2};
    EXPECT_TRUE(lca_closure(parent, {}).empty());
    EXPECT_EQ(lca_closure(parent, {3}), std::vector<int>{3});
    auto L = lca_closure(parent, {3, 4});
    std::sort(L.begin(), L.end());
    EXPECT_EQ(L, (std::vector<int>{0, 3, 4}));
}

TEST(LcaClosure, RandomTrees) {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 300; ++it) {
        int n = 1 + (int)(rng() % 12);
        auto parent = random_tree(n, rng);
        std::set<int> M;
        int m = (int)(rng() % (n + 1));
        for (int i = 0; i < m; ++i) M.insert((int)(rng() % n));
        auto got = lca_closure(parent, std::vector<int>(M.begin(), M.end()));
        std::set<int> L(got.begin(), got.end());
        EXPECT_EQ(L, closure_by_hand(parent, M));
        if (!M.empty()) EXPECT_LE(L.size(), 2 * M.size() - 1);
        // each component of the tree minus L touches at most two nodes of L
        std::vector<std::vector<int>> adj(n);
        for (int v = 0; v < n; ++v)
            if (parent[v] >= 0) {
                adj[v].push_back(parent[v]);
                adj[parent[v]].push_back(v);
            }
        std::vector<char> seen(n, 0);
        for (int s = 0; s < n; ++s) {
            if (L.count(s) || seen[s]) continue;
            std::set<int> touch;
            std::vector<int> q{s};
            seen[s] = 1;
            for (size_t i = 0; i < q.size(); ++i)
                for (int w : adj[q[i]]) {
                    if (L.count(w))
                        touch.insert(w);
                    else if (!seen[w]) {
                        seen[w] = 1;
                        q.push_back(w);
                    }
                }
            EXPECT_LE(touch.size(), 2u);
        }
    }
}

TEST(Pace, RoundTrip) {
    auto g = gen_grid(3, 4, 0, 1);
    auto td = build_td(g);
    std::string text = to_pace(td, g.vertex_capacity());
    std::istringstream in(text);
    auto back = parse_pace(in);
    EXPECT_EQ(back.bags, td.bags);
    EXPECT_EQ(validate(g, back), validate(g, td));
    EXPECT_EQ(text.rfind("s td ", 0), 0u);
}
