#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tcycle/graph.hpp"

namespace tcycle {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;  // sorted vertex ids
    std::vector<std::vector<int>> adj;   // tree edges
    int root = 0;

    int size() const { return (int)bags.size(); }
    int width() const;
    std::vector<int> parents() const;  // -1 at the root
    int add_bag(std::vector<int> bag);
    void link(int a, int b);
};

enum class NodeKind { Leaf, Introduce, Forget, Join };

struct NiceTreeDecomposition {
    std::vector<std::vector<int>> bags;
    std::vector<NodeKind> kind;
    std::vector<int> vertex;  // introduced / forgotten vertex, -1 otherwise
    std::vector<std::vector<int>> children;
    int root = -1;

    int size() const { return (int)bags.size(); }
    int width() const;
    TreeDecomposition plain() const;
    // children before parents
    std::vector<int> postorder() const;
};

enum class TdMode { GreedyFill, RadialLayer };

// Returns the width; throws EdgeUncovered, VertexSubtreeDisconnected, InvalidDecomposition.
int validate(const EmbeddedGraph& g, const TreeDecomposition& td);
// Also checks the nice-form shape.
int validate_nice(const EmbeddedGraph& g, const NiceTreeDecomposition& td);

TreeDecomposition build_td(const EmbeddedGraph& g, TdMode mode = TdMode::GreedyFill);
NiceTreeDecomposition make_nice(const TreeDecomposition& td);
NiceTreeDecomposition nice_decomposition(const EmbeddedGraph& g, TdMode mode = TdMode::GreedyFill);

std::vector<int> lca_closure(const std::vector<int>& parent, const std::vector<int>& marked);

std::string to_pace(const TreeDecomposition& td, int n);
TreeDecomposition parse_pace(std::istream& in);

}  // namespace tcycle
