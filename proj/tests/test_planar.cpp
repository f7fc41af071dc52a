#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "tcycle/generate.hpp"
#include "tcycle/graph.hpp"

using namespace tcycle;

namespace {

EmbeddedGraph triangle() { return embed_checked({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {1, 2}, {2, 0}}); }

// BFS over the vertex-face incidence graph, halved
std::vector<int> naive_radial(const EmbeddedGraph& g, int s) {
    FaceSet fs = compute_faces(g);
    int cap = g.vertex_capacity();
    int F = (int)fs.faces.size();
    std::vector<int> d(cap + F, -1);
    std::vector<int> q{s};
    d[s] = 0;
    for (size_t i = 0; i < q.size(); ++i) {
        int x = q[i];
        std::vector<int> nb;
        if (x < cap) {
            for (int f : fs.vertex_faces[x]) nb.push_back(cap + f);
        } else {
            nb = fs.faces[x - cap].vertices;
        }
        for (int y : nb)
            if (d[y] < 0) {
                d[y] = d[x] + 1;
                q.push_back(y);
            }
    }
    std::vector<int> out(cap, -1);
    for (int v : g.vertices())
        if (d[v] >= 0) out[v] = d[v] / 2;
    return out;
}

}  // namespace

TEST(Embedding, TriangleHasTwoFaces) { EXPECT_EQ(validate_embedding(triangle()).faces.size(), 2u); }

TEST(Embedding, SingleEdgeHasOneFace) {
    auto g = embed_checked({{0, 0}, {1, 0}}, {{0, 1}});
    EXPECT_EQ(validate_embedding(g).faces.size(), 1u);
}

TEST(Embedding, GridFaces) {
    auto g = gen_grid(3, 3, 0, 1);
    auto fs = validate_embedding(g);
    EXPECT_EQ(fs.faces.size(), 5u);
    size_t total = 0;
    for (const auto& f : fs.faces) total += f.darts.size();
    EXPECT_EQ(total, 2u * g.num_edges());
}

TEST(Embedding, BrokenRotationRejected) {
    auto g = triangle();
    auto r = g.rotation(0);
    r.push_back(r[0]);
    g.set_rotation(0, r);
    EXPECT_THROW(validate_embedding(g), Error);
}

TEST(Embedding, TwistedRotationFailsEuler) {
    // K4 with one rotation reversed is not a plane embedding
    auto g = embed_checked({{0, 0}, {4, 0}, {2, 4}, {2, 1}}, {{0, 1}, {1, 2}, {2, 0}, {3, 0}, {3, 1}, {3, 2}});
    auto r = g.rotation(3);
    std::swap(r[0], r[1]);
    g.set_rotation(3, r);
    EXPECT_THROW(validate_embedding(g), Error);
}

TEST(Radial, Triangle) {
    auto m = radial_bfs(triangle(), 0);
    EXPECT_EQ(m.dist[0], 0);
    EXPECT_EQ(m.dist[1], 1);
    EXPECT_EQ(m.dist[2], 1);
}

TEST(Radial, PathIsOneFace) {
    auto g = embed_checked({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    auto m = radial_bfs(g, 0);
    for (int v = 1; v < 5; ++v) EXPECT_EQ(m.dist[v], 1);
}

TEST(Radial, GridCorners) {
    auto g = gen_grid(5, 5, 0, 1);
    // opposite corners share the outer face
    EXPECT_EQ(radial_distance(g, 0, 24), 1);
    EXPECT_EQ(radial_distance(g, 24, 0), 1);
    EXPECT_EQ(radial_distance(g, 0, 12), 2);
    EXPECT_EQ(radial_distance(g, 7, 7), 0);
    EXPECT_EQ(radial_distance(g, 0, 1), 1);
}

TEST(Radial, DisconnectedThrows) {
    auto g = embed_checked({{0, 0}, {1, 0}, {5, 0}, {6, 0}}, {{0, 1}, {2, 3}});
    EXPECT_THROW(radial_distance(g, 0, 3), Error);
}

TEST(Radial, MatchesIncidenceBfs) {
    for (int seed = 0; seed < 500; ++seed) {
        auto g = gen_random_planar(8 + seed % 13, 0, 0.2 + 0.1 * (seed % 6), seed);
        auto vs = g.vertices();
        int s = vs[seed % vs.size()];
        auto want = naive_radial(g, s);
        auto got = radial_bfs(g, s);
        for (int v : vs) ASSERT_EQ(got.dist[v], want[v]) << seed << " " << v;
    }
}

TEST(Radial, SymmetricAndTriangleInequality) {
    for (int seed = 0; seed < 30; ++seed) {
        auto g = gen_random_planar(12, 0, 0.4, seed);
        auto vs = g.vertices();
        std::vector<std::vector<int>> d(g.vertex_capacity());
        for (int v : vs) d[v] = radial_bfs(g, v).dist;
        for (int a : vs)
            for (int b : vs) {
                ASSERT_EQ(d[a][b], d[b][a]);
                for (int c : vs) ASSERT_LE(d[a][c], d[a][b] + d[b][c]);
            }
    }
}

TEST(Radial, NeighbouringFacesDifferByOne) {
    auto g = gen_random_planar(30, 0, 0.5, 3);
    auto fs = compute_faces(g);
    auto m = radial_bfs(g, fs, g.vertices()[0]);
    for (const auto& f : fs.faces)
        for (int a : f.vertices)
            for (int b : f.vertices) EXPECT_LE(std::abs(m.dist[a] - m.dist[b]), 1);
}

TEST(Format, RoundTrip) {
    for (int seed = 0; seed < 20; ++seed) {
        auto g = gen_random_planar(15, 3, 0.5, seed);
        auto text = serialize(g);
        auto h = parse_graph_string(text);
        EXPECT_EQ(serialize(h), text);
        EXPECT_EQ(h.terminals(), g.terminals());
    }
}

TEST(Format, MissingRotationRejected) {
    EXPECT_THROW(parse_graph_string("v 0\nv 1\ne 0 0 1\nrot 0 0\n"), Error);
}

TEST(Format, Comments) {
    auto g = parse_graph_string("# triangle\nv 0\nv 1\nv 2\nt 1\ne 0 0 1\ne 1 1 2\ne 2 2 0\nrot 0 0 2\nrot 1 1 0\nrot 2 2 1\n");
    EXPECT_EQ(g.num_vertices(), 3);
    EXPECT_EQ(g.terminals(), std::vector<int>{1});
    EXPECT_EQ(validate_embedding(g).faces.size(), 2u);
}

TEST(Graph, DeletionKeepsIds) {
    auto g = gen_grid(3, 3, 0, 1);
    auto h = remove_vertices(g, {4});
    EXPECT_FALSE(h.has_vertex(4));
    EXPECT_TRUE(h.has_vertex(8));
    EXPECT_EQ(validate_embedding(h).faces.size(), 2u);
}

TEST(Graph, ContractEdge) {
    auto g = gen_grid(3, 3, 0, 1);
    int e = g.find_edge(4, 5);
    g.contract_edge(e, 4);
    EXPECT_FALSE(g.has_vertex(5));
    EXPECT_EQ(g.num_vertices(), 8);
    EXPECT_NO_THROW(validate_embedding(g));
}

TEST(Generators, EulerOnEveryFamily) {
    GenParams p;
    for (const char* fam : {"nested-rings", "grid-with-terminals", "random-planar", "concentric-gadget"})
        for (int seed = 0; seed < 5; ++seed) {
            auto g = generate(fam, p, seed);
            EXPECT_NO_THROW(validate_embedding(g)) << fam;
            EXPECT_EQ(serialize(generate(fam, p, seed)), serialize(g));
        }
}
