#pragma once

#include <map>
#include <utility>
#include <string>
#include <vector>

#include "tcycle/graph.hpp"
#include "tcycle/region.hpp"

namespace tcycle {

// throws NotDisjoint / NotNested (and NotACycle from cycle_walk)
ConcentricSequence check_concentric(const EmbeddedGraph& g, const std::vector<std::vector<int>>& cycles);
bool check_tight(const EmbeddedGraph& g, const ConcentricSequence& seq);
// d^R(v, x) > l for every terminal x; terminals outside v's component count as far.
bool is_isolated(const EmbeddedGraph& g, const std::vector<int>& T, int v, int l);

struct CLConfiguration {
    const EmbeddedGraph* g = nullptr;
    ConcentricSequence seq;
    CycleWalk loop;
    std::vector<int> T;
    int depth() const { return seq.depth(); }
};
// throws InvalidConfiguration if L is not a T-loop or D_r meets T
CLConfiguration make_configuration(const EmbeddedGraph& g, const std::vector<std::vector<int>>& cycles,
                                   const std::vector<int>& loop_edges, const std::vector<int>& T);

// Open run of a path: alternating elements, vertices and edges.
struct Arc {
    std::vector<std::pair<bool, int>> elems;  // (is_vertex, id) in path order
    std::vector<int> vertices;
    std::vector<int> edges;
    void push(bool isv, int id) {
        elems.push_back({isv, id});
        (isv ? vertices : edges).push_back(id);
    }
};

struct Segment {
    int id = 0;
    std::vector<int> vertices;  // path order along L
    std::vector<int> edges;
    int u = -1, v = -1;
    bool degenerate() const { return u == v; }
    int eccentricity = 0;
    std::map<int, std::vector<Arc>> chords;      // i -> i-chords
    std::map<int, std::vector<std::vector<Arc>>> semichords;  // i -> per i-chord, its i-semichords (i >= 1)
    bool has_zero_chord() const;
};

std::vector<Segment> extract_segments(const CLConfiguration& q, int j);

// Faces of D_j on the side of the segment away from int(D_0); empty if the segment has a 0-chord.
std::vector<char> segment_zone(const CLConfiguration& q, int j, const Segment& s);
bool lies_in_zone(const CLConfiguration& q, int j, const std::vector<char>& zone, const Segment& inner, const Segment& outer);

// 0 = parallel, otherwise the furthest condition of the definition that failed (1, 2 or 3).
int parallel_check(const CLConfiguration& q, int j, const std::vector<Segment>& segs, int a, int b);

struct TypePartition {
    std::vector<std::vector<int>> classes;  // each ordered outermost first
    std::vector<int> excluded;              // segments with a 0-chord
    std::vector<std::vector<char>> parallel;
    bool transitive = true;
};
TypePartition type_partition(const CLConfiguration& q, int j, const std::vector<Segment>& segs);
TypePartition type_partition(const CLConfiguration& q, int j);

struct ConvexVerdict {
    bool no_zero_chord = true;
    bool one_chord = true;
    bool touches_previous = true;
    bool two_semichords = true;
    bool deeper_child = true;
    bool convex() const { return no_zero_chord && one_chord && touches_previous && two_semichords && deeper_child; }
};
std::vector<ConvexVerdict> check_convex(const CLConfiguration& q);
bool is_convex(const CLConfiguration& q);

struct SegmentForest {
    int level = 0;
    std::vector<int> parent;  // -1 for roots
    std::vector<std::vector<int>> children;
    std::vector<int> height;
    std::vector<int> subtree;  // node count including self
    int forest_height = 0;
    // precedes[a][b]: a lies in the zone of b
    std::vector<std::vector<char>> precedes;
};
SegmentForest build_segment_forest(const CLConfiguration& q, int j, const std::vector<Segment>& segs);
SegmentForest build_segment_forest(const CLConfiguration& q, int j);
// h <= log_a N + 3 with a = 2^(1/3)
bool height_bound_holds(int h, int n);

int config_cost(const CLConfiguration& q);
std::string config_report_json(const CLConfiguration& q);

}  // namespace tcycle
