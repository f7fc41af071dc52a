#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tcycle/decomposition.hpp"
#include "tcycle/graph.hpp"
#include "tcycle/oracle.hpp"
#include "tcycle/treewidth.hpp"

namespace tcycle {

struct ProtrusionDecomposition {
    std::vector<std::vector<int>> parts;          // parts[0] = X_0
    std::vector<std::vector<int>> neighbor_sets;  // B_i = N(X_i), empty for i = 0
    int eta = 0;
    long alpha = 0, beta = 0, gamma = 0;
    int td_width = -1;            // width of the decomposition of G - S
    std::vector<int> part_width;  // validated width of G[X_i+], -1 for X_0
    std::vector<int> marked;      // marked nodes M
    int ell() const { return (int)parts.size() - 1; }
};

// throws ModulatorInvalid if the decomposition of G - S is wider than eta
ProtrusionDecomposition protrusion_decompose(const EmbeddedGraph& g, const std::vector<int>& S, int eta);

// partition, |X_0| <= alpha, ell <= beta, N(X_i) in X_0, |B_i| and width <= gamma; returns a reason or ""
std::string check_protrusion_decomposition(const EmbeddedGraph& g, const std::vector<int>& S,
                                           const ProtrusionDecomposition& pd);

// Path systems through the part: each pattern is a set of B-pairs forming a linear forest or
// one cycle of length >= 3; realizable if the pairs link by internally disjoint paths whose
// inner vertices avoid B.
using Pattern = std::vector<std::pair<int, int>>;

struct LinkageProfile {
    std::vector<int> boundary;
    std::set<Matching> feasible_dp;
    std::set<Matching> feasible_mc;
    std::set<Pattern> patterns;
    bool operator==(const LinkageProfile& o) const {
        return boundary == o.boundary && feasible_dp == o.feasible_dp && feasible_mc == o.feasible_mc &&
               patterns == o.patterns;
    }
};

std::vector<Matching> all_matchings(const std::vector<int>& B);
std::vector<Pattern> all_patterns(const std::vector<int>& B);
bool pattern_realizable(const EmbeddedGraph& g, const std::vector<int>& B, const Pattern& p);
// same through the disjoint-paths DP, twinning boundary vertices used twice
bool pattern_realizable_dp(const EmbeddedGraph& g, const std::vector<int>& B, const Pattern& p);

// throws BoundaryTooLarge above 6 boundary vertices
LinkageProfile linkage_profile(const EmbeddedGraph& g, const std::vector<int>& B, const NiceTreeDecomposition& td);
LinkageProfile linkage_profile(const EmbeddedGraph& g, const std::vector<int>& B);

// G[X u B] without the edges inside B
EmbeddedGraph part_graph(const EmbeddedGraph& g, const std::vector<int>& X, const std::vector<int>& B);

struct Replacement {
    EmbeddedGraph H;                      // contains B
    std::vector<std::vector<int>> model;  // branch sets in the part, indexed like H.vertices()
    long candidates = 0;
};

struct SearchLimits {
    long max_candidates = 4096;
};

// Smallest H beating the part; nullopt if none. throws BudgetExceeded, BoundaryTooLarge
std::optional<Replacement> replacement_search(const EmbeddedGraph& part, const std::vector<int>& B, int size_budget,
                                              const SearchLimits& lim = {});

// Deletes far vertices in halving batches, then single deletions, contractions and edge
// deletions, keeping the profile fixed. H is a minor of the part by construction.
std::optional<Replacement> greedy_reduction(const EmbeddedGraph& part, const std::vector<int>& B, long max_trials = 20000);

// Recomputes both profiles and the rooted model from scratch.
bool verify_replacement(const EmbeddedGraph& part, const std::vector<int>& B, const Replacement& r);

// Replaces the interior X by H through the branch-set model (contract, delete); throws SpliceNonPlanar
EmbeddedGraph splice(const EmbeddedGraph& host, const std::vector<int>& X, const Replacement& r,
                     const std::vector<int>& B);

struct KernelConfig {
    int level = 2;
    int budget = 8;  // max |V(H)|
    double c1 = 4, c2 = 6;
    int g = 0;       // 0: g(k)
    int eta1 = 0;    // 0: 4 g(k)
    int eta2 = 0;    // 0: 4 g(g(k) + |B_i|)
    int max_boundary = 4;
    int max_part = 18;
    long max_candidates = 4096;
    long max_trials = 20000;  // greedy reduction of large parts
    bool parallel = true;
    bool verify = true;  // post-hoc replacement checks
};

struct ReplacementRecord {
    int level = 1;
    int part = 0;
    int sub = 0;
    int boundary = 0;
    int old_size = 0;
    int new_size = 0;
    long candidates = 0;
    bool replaced = false;
    bool verified = false;
    std::string note;
};

struct KernelReport {
    int n_in = 0, m_in = 0, k = 0, g = 0;
    int n_reduced = 0, U = 0, ell = 0;
    int eta1 = 0;
    int step3_removed = 0;
    std::string decided;  // "yes"/"no" when settled without the pipeline
    std::vector<ReplacementRecord> replacements;
    int n_out = 0, m_out = 0;
    std::vector<std::string> notes;
};

struct KernelResult {
    EmbeddedGraph graph;
    KernelReport report;
};

KernelResult kernelize(const EmbeddedGraph& g, const std::vector<int>& T, const KernelConfig& cfg = {});

std::string kernel_report_json(const KernelReport& r);

}  // namespace tcycle
