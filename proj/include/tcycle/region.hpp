#pragma once

#include <functional>
#include <vector>

#include "tcycle/graph.hpp"

namespace tcycle {

// Vertex order and edge order of a simple cycle given by its edge set.
struct CycleWalk {
    std::vector<int> vertices;
    std::vector<int> edges;  // edges[i] joins vertices[i] and vertices[i+1]
};
CycleWalk cycle_walk(const EmbeddedGraph& g, const std::vector<int>& edge_set);

// Label faces by the component of the dual after cutting the given edges.
std::vector<int> face_regions(const EmbeddedGraph& g, const FaceSet& fs, const std::vector<char>& cut_edge, int* count);

// Faces on the side of the cycle away from the outer face.
std::vector<char> inside_faces(const EmbeddedGraph& g, const FaceSet& fs, const std::vector<int>& cycle_edges, int outer);

struct ConcentricSequence {
    FaceSet fs;
    int outer = -1;
    std::vector<CycleWalk> cycles;              // C_0 .. C_r
    std::vector<std::vector<char>> inside;      // per i, per face: face lies in D_i
    std::vector<std::vector<char>> on_cycle_v;  // per i, per vertex
    std::vector<std::vector<char>> on_cycle_e;  // per i, per edge

    int depth() const { return (int)cycles.size() - 1; }
    bool vertex_in_open(const EmbeddedGraph& g, int i, int v) const;
    bool vertex_in_disk(const EmbeddedGraph& g, int i, int v) const;
    bool edge_in_open(const EmbeddedGraph& g, int i, int e) const;
    bool edge_in_disk(const EmbeddedGraph& g, int i, int e) const;
    bool on_any_cycle(int e) const;
};

// Builds the derived disks without checking nesting.
ConcentricSequence make_sequence(const EmbeddedGraph& g, const std::vector<std::vector<int>>& cycle_edges);

// Simple graphs only. Callback returns false to stop.
void enumerate_cycles(const EmbeddedGraph& g,
                      const std::function<bool(const std::vector<int>& verts, const std::vector<int>& edges)>& f);
// Cycles through vertex s, each reported once.
void enumerate_cycles_through(const EmbeddedGraph& g, int s,
                              const std::function<bool(const std::vector<int>& verts, const std::vector<int>& edges)>& f);

}  // namespace tcycle
