#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tcycle/graph.hpp"

namespace tcycle {

struct GenParams {
    int n = 20;
    int k = 3;
    int depth = 3;
    int rows = 3;
    int ring = 4;
    double keep = 0.5;  // random-planar: share of non-tree edges kept
    bool hub = true;
};

// Terminals are marked on the returned graph.
EmbeddedGraph generate(const std::string& family, const GenParams& p, uint64_t seed);

EmbeddedGraph gen_nested_rings(int depth, int ring, int k, bool hub, uint64_t seed);
EmbeddedGraph gen_grid(int rows, int cols, int k, uint64_t seed);
EmbeddedGraph gen_random_planar(int n, int k, double keep, uint64_t seed);
// Concentric rings with sparse spokes and terminals hanging outside the outer ring.
EmbeddedGraph gen_concentric_gadget(int depth, int ring, int k, uint64_t seed);

// Polar grid with rings 0..R as the concentric cycles. Each dip enters D_R at angle a, runs
// along ring `ring` to angle b (a < b) and leaves again; outer rings carry the connections.
struct Dip {
    int a, b, ring;
};
struct PolarConfig {
    EmbeddedGraph g;
    int R = 0, M = 0, H = 0;
    std::vector<std::vector<int>> cycles;
    std::vector<int> loop;
    std::vector<int> T;
    int vid(int ring, int angle) const { return ring * M + ((angle % M) + M) % M; }
};
PolarConfig polar_configuration(int R, int M, const std::vector<Dip>& dips);

// Straight-line instance; throws BadParams on crossings or an Euler failure.
EmbeddedGraph embed_checked(const std::vector<std::pair<double, double>>& pts, const std::vector<std::pair<int, int>>& edges);

}  // namespace tcycle
