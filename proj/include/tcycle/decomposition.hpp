#pragma once

#include <string>
#include <vector>

#include "tcycle/graph.hpp"

namespace tcycle {

struct IsolationBudget {
    int g = 1;
    int four_g() const { return 4 * g; }
    int five_g1() const { return 5 * g + 1; }
};
// ceil(c1 * log2(k+1)) + c2
int g_of_k(int k, double c1 = 4, double c2 = 6);
IsolationBudget make_budget(int k, double c1 = 4, double c2 = 6);

// H on a c-punctured plane. Holes are vertex sets (terminals start as point holes).
struct PuncturedInstance {
    EmbeddedGraph graph;
    std::vector<std::vector<int>> holes;
    std::vector<int> boundary_vertices;
    int hole_count() const { return (int)holes.size(); }
};
PuncturedInstance make_instance(EmbeddedGraph g, std::vector<std::vector<int>> holes);

// Alternating v0 f0 v1 ... v_m in the radial graph; faces index compute_faces(graph).
struct ProperCurve {
    std::vector<int> vertices;
    std::vector<int> faces;
};
// Shortest curve from a vertex of `from` to a vertex of `to`; empty if none.
ProperCurve shortest_curve(const EmbeddedGraph& g, const FaceSet& fs, const std::vector<int>& from,
                           const std::vector<int>& to);

struct Removal {
    int vertex = -1;
    std::string reason;
    int threshold = 0;
};

struct CutResult {
    std::vector<PuncturedInstance> children;
    std::vector<int> removed;  // always empty here
    ProperCurve curve;
    bool within_bound = true;  // |curve| <= 6g+6
};

PuncturedInstance initial_punctures(const EmbeddedGraph& g, const std::vector<int>& T);
// throws HoleCountTooSmall, NoConnectingCurve
CutResult cut_reduction(const PuncturedInstance& inst, const IsolationBudget& b);

// V_0 = boundary; unreachable vertices form one extra last layer. throws WrongHoleCount
std::vector<std::vector<int>> layer_partition(const PuncturedInstance& inst);
EmbeddedGraph remove_one_punctured(const PuncturedInstance& inst, const IsolationBudget& b);

struct TwoPuncturedTrace {
    ProperCurve A;
    ProperCurve B;
    bool short_case = false;
    std::vector<int> region;  // R
    std::vector<int> removed;
};
// throws WrongHoleCount, NoConnectingCurve
EmbeddedGraph remove_two_punctured(const PuncturedInstance& inst, const IsolationBudget& b,
                                   TwoPuncturedTrace* trace = nullptr);

struct RemovalReport {
    std::vector<Removal> removed;
    std::vector<int> U;
    std::vector<PuncturedInstance> pieces;
    std::vector<int> cut_sizes;
    int cuts_over_bound = 0;
    bool terminals_disconnected = false;
    bool two_punctured_short = false;
    int g = 0;
};

struct ReedResult {
    EmbeddedGraph graph;
    std::vector<int> U;
    RemovalReport report;
};
// `parallel` runs the boundary isolation batch with OpenMP
ReedResult reed_pipeline(const EmbeddedGraph& g, const std::vector<int>& T, const IsolationBudget& b,
                         bool parallel = true);
EmbeddedGraph quadratic_remover(const EmbeddedGraph& g, const std::vector<int>& T, const IsolationBudget& b,
                                std::vector<Removal>* removed = nullptr);

// is_isolated for each listed vertex
std::vector<char> isolation_batch_serial(const EmbeddedGraph& g, const std::vector<int>& T,
                                         const std::vector<int>& vs, int l);
std::vector<char> isolation_batch_parallel(const EmbeddedGraph& g, const std::vector<int>& T,
                                           const std::vector<int>& vs, int l);

std::string removal_report_json(const RemovalReport& r);

}  // namespace tcycle
