#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tcycle/graph.hpp"
#include "tcycle/region.hpp"

namespace tcycle {

using Matching = std::vector<std::pair<int, int>>;

struct Witness {
    enum class Kind { Cycle, PathSystem };
    Kind kind = Kind::Cycle;
    std::vector<std::vector<int>> edge_sets;
};

struct OracleLimits {
    int t_cycle = 18;
    int disjoint_paths = 18;
    int minor_pattern = 8;
    int minor_host = 18;
    int isolation = 14;
    int cheap_loops = 16;
};
OracleLimits& oracle_limits();

// pairs distinct, no vertex in two pairs
bool is_proper_matching(const Matching& m);
// Edge list forms one simple cycle through every vertex of T.
bool is_t_loop(const EmbeddedGraph& g, const std::vector<int>& T, const std::vector<int>& edges);

std::optional<Witness> brute_t_cycle(const EmbeddedGraph& g, const std::vector<int>& T);
// Internally disjoint, edge-distinct paths; a vertex may be an endpoint of several paths.
bool brute_disjoint_paths(const EmbeddedGraph& g, const Matching& m);
bool brute_minor(const EmbeddedGraph& host, const EmbeddedGraph& pattern);
// Branch sets indexed like pattern.vertices(); nullopt if none.
std::optional<std::vector<std::vector<int>>> brute_minor_model(const EmbeddedGraph& host, const EmbeddedGraph& pattern);
// roots[i] = host vertex that must lie in branch set i (or -1)
std::optional<std::vector<std::vector<int>>> rooted_minor_model(const EmbeddedGraph& host, const EmbeddedGraph& pattern,
                                                                const std::vector<int>& roots);
bool verify_minor_model(const EmbeddedGraph& host, const EmbeddedGraph& pattern, const std::vector<std::vector<int>>& model);
// Contraction heuristic for hosts above the exhaustive limit; every answer carries a checked model.
std::optional<std::vector<std::vector<int>>> find_minor_model(const EmbeddedGraph& host, const EmbeddedGraph& pattern, int attempts = 24);

bool brute_isolation(const EmbeddedGraph& g, const std::vector<int>& T, int v, int l);
// Largest number of vertex-disjoint concentric cycles in g (any nesting, any side).
int brute_max_concentric(const EmbeddedGraph& g, int cap);

std::vector<Witness> enumerate_cheap_loops(const EmbeddedGraph& g, const ConcentricSequence& C, const std::vector<int>& T);
int loop_cost(const std::vector<int>& loop_edges, const ConcentricSequence& C);

}  // namespace tcycle
