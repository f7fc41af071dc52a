#pragma once

#include <optional>
#include <vector>

#include "tcycle/graph.hpp"
#include "tcycle/oracle.hpp"
#include "tcycle/treewidth.hpp"

namespace tcycle {

struct SubdividedInstance {
    EmbeddedGraph graph;
    std::vector<int> subdivision_vertices;  // w_i, one per pair
    Matching origin_pairs;
};

// Rotations of the new vertices are not meaningful; the result is only used abstractly.
SubdividedInstance subdivide(const EmbeddedGraph& g, const Matching& m);

std::optional<Witness> solve_t_cycle(const EmbeddedGraph& g, const std::vector<int>& T, const NiceTreeDecomposition& td);
std::optional<Witness> solve_t_cycle(const EmbeddedGraph& g, const std::vector<int>& T);

bool solve_disjoint_paths(const EmbeddedGraph& g, const Matching& m, const NiceTreeDecomposition& td);
bool solve_disjoint_paths(const EmbeddedGraph& g, const Matching& m);

// Empty M counts as true.
bool solve_m_cycle(const EmbeddedGraph& g, const std::vector<int>& B, const Matching& m, const NiceTreeDecomposition& td);
bool solve_m_cycle(const EmbeddedGraph& g, const std::vector<int>& B, const Matching& m);

// Adds each w_i to the bags on a tree path from a bag with u_i to a bag with v_i.
TreeDecomposition extend_for_subdivision(const TreeDecomposition& td, const SubdividedInstance& s);

}  // namespace tcycle
