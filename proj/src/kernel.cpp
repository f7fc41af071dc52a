#include "tcycle/kernel.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <cmath>
#include <functional>
#include <numeric>

#include <json.hpp>

#include "tcycle/cycles.hpp"
#include "tcycle/dp.hpp"

namespace tcycle {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool contains(const std::vector<int>& sorted, int x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

std::vector<int> neighborhood(const EmbeddedGraph& g, const std::vector<int>& X) {
    std::vector<int> xs = sorted_unique(X);
    std::vector<int> out;
    for (int v : xs)
        for (int w : g.neighbors(v))
            if (!contains(xs, w)) out.push_back(w);
    return sorted_unique(out);
}

}  // namespace

ProtrusionDecomposition protrusion_decompose(const EmbeddedGraph& g, const std::vector<int>& S0, int eta) {
    std::vector<int> S = sorted_unique(S0);
    for (int s : S)
        if (!g.has_vertex(s)) throw Error("UnknownVertex", std::to_string(s));
    ProtrusionDecomposition pd;
    pd.eta = eta;
    long s = (long)S.size();
    pd.alpha = (4L * (eta + 1) + 1) * s;
    pd.beta = (20L * (eta + 1) + 5) * s;
    pd.gamma = 3L * eta + 2;

    EmbeddedGraph rest = remove_vertices(g, S);
    NiceTreeDecomposition td = nice_decomposition(rest);
    pd.td_width = validate_nice(rest, td);
    if (pd.td_width > eta)
        throw Error("ModulatorInvalid", "G - S decomposition has width " + std::to_string(pd.td_width) + " > " + std::to_string(eta));

    int N = td.size();
    int cap = g.vertex_capacity();
    std::vector<char> in_s(cap, 0);
    for (int x : S) in_s[x] = 1;
    std::vector<char> marked(N, 0);
    std::vector<std::vector<int>> below(N);  // chi(T_v - M)
    std::vector<int> mark(cap, -1);
    std::vector<int> stamp(cap, -1);
    int clock = 0;
    for (int v : td.postorder()) {
        std::vector<int> sub;  // chi(T_v - M) without v's bag
        for (int c : td.children[v]) {
            sub.insert(sub.end(), below[c].begin(), below[c].end());
            std::vector<int>().swap(below[c]);
        }
        std::vector<int> W = sub;
        W.insert(W.end(), td.bags[v].begin(), td.bags[v].end());
        W = sorted_unique(W);
        ++clock;
        for (int x : W) mark[x] = clock;
        int wclock = clock;
        bool hit = false;
        std::vector<char> done(W.size(), 0);
        for (size_t i0 = 0; i0 < W.size() && !hit; ++i0) {
            if (done[i0]) continue;
            done[i0] = 1;
            std::vector<int> q{W[i0]};
            int sn = 0;
            ++clock;
            for (size_t i = 0; i < q.size(); ++i)
                for (int w : g.neighbors(q[i])) {
                    if (in_s[w]) {
                        if (stamp[w] != clock) {
                            stamp[w] = clock;
                            ++sn;
                        }
                    } else if (mark[w] == wclock) {
                        size_t k = std::lower_bound(W.begin(), W.end(), w) - W.begin();
                        if (!done[k]) {
                            done[k] = 1;
                            q.push_back(w);
                        }
                    }
                }
            hit = sn >= 3;
        }
        if (hit) {
            marked[v] = 1;
            pd.marked.push_back(v);
            below[v] = sorted_unique(sub);
        } else {
            below[v] = std::move(W);
        }
    }

    std::vector<int> parent(N, -1);
    for (int v = 0; v < N; ++v)
        for (int c : td.children[v]) parent[c] = v;
    std::vector<int> L = lca_closure(parent, pd.marked);
    std::vector<int> X0 = S;
    for (int t : L) X0.insert(X0.end(), td.bags[t].begin(), td.bags[t].end());
    X0 = sorted_unique(X0);

    std::vector<char> in0(cap, 0);
    for (int x : X0) in0[x] = 1;
    std::vector<char> seen(cap, 0);
    std::map<std::vector<int>, std::vector<int>> groups;
    std::vector<std::vector<int>> order;
    for (int v : g.vertices()) {
        if (in0[v] || seen[v]) continue;
        std::vector<int> comp{v};
        seen[v] = 1;
        for (size_t i = 0; i < comp.size(); ++i)
            for (int w : g.neighbors(comp[i]))
                if (!in0[w] && !seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        auto nb = neighborhood(g, comp);
        auto it = groups.find(nb);
        if (it == groups.end()) {
            groups[nb] = comp;
            order.push_back(nb);
        } else {
            it->second.insert(it->second.end(), comp.begin(), comp.end());
        }
    }
    pd.parts.push_back(X0);
    pd.neighbor_sets.push_back({});
    pd.part_width.push_back(-1);
    TreeDecomposition plain = td.plain();
    for (const auto& nb : order) {
        auto X = sorted_unique(groups[nb]);
        pd.parts.push_back(X);
        pd.neighbor_sets.push_back(nb);
        // restrict the decomposition of G - S to X+ and add B n S everywhere
        std::vector<int> plus = X;
        plus.insert(plus.end(), nb.begin(), nb.end());
        plus = sorted_unique(plus);
        std::vector<int> bs;
        for (int b : nb)
            if (in_s[b]) bs.push_back(b);
        TreeDecomposition r = plain;
        for (auto& bag : r.bags) {
            std::vector<int> nbag;
            for (int x : bag)
                if (contains(plus, x)) nbag.push_back(x);
            nbag.insert(nbag.end(), bs.begin(), bs.end());
            bag = sorted_unique(nbag);
        }
        EmbeddedGraph sub = induced(g, plus);
        int w = validate(sub, r);
        try {
            w = std::min(w, validate(sub, build_td(sub)));
        } catch (const Error&) {
        }
        pd.part_width.push_back(w);
    }
    return pd;
}

std::string check_protrusion_decomposition(const EmbeddedGraph& g, const std::vector<int>& S0,
                                           const ProtrusionDecomposition& pd) {
    std::vector<int> S = sorted_unique(S0);
    std::vector<int> owner(g.vertex_capacity(), -1);
    for (int i = 0; i < (int)pd.parts.size(); ++i)
        for (int v : pd.parts[i]) {
            if (!g.has_vertex(v)) return "unknown vertex " + std::to_string(v);
            if (owner[v] != -1) return "vertex " + std::to_string(v) + " in two parts";
            owner[v] = i;
        }
    for (int v : g.vertices())
        if (owner[v] < 0) return "vertex " + std::to_string(v) + " uncovered";
    for (int s : S)
        if (owner[s] != 0) return "modulator vertex outside X_0";
    if ((long)pd.parts[0].size() > pd.alpha) return "|X_0| above alpha";
    if ((long)pd.ell() > pd.beta) return "ell above beta";
    for (int i = 1; i <= pd.ell(); ++i) {
        auto nb = neighborhood(g, pd.parts[i]);
        for (int w : nb)
            if (owner[w] != 0) return "N(X_" + std::to_string(i) + ") leaves X_0";
        if (nb != pd.neighbor_sets[i]) return "B_" + std::to_string(i) + " mismatch";
        if ((long)nb.size() > pd.gamma) return "|B_" + std::to_string(i) + "| above gamma";
        if ((long)pd.part_width[i] > pd.gamma) return "width of X_" + std::to_string(i) + " above gamma";
    }
    return "";
}

std::vector<Matching> all_matchings(const std::vector<int>& B0) {
    std::vector<int> B = sorted_unique(B0);
    std::vector<Matching> out;
    Matching cur;
    std::vector<char> used(B.size(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        while (i < B.size() && used[i]) ++i;
        if (i == B.size()) {
            Matching m = cur;
            std::sort(m.begin(), m.end());
            out.push_back(m);
            return;
        }
        used[i] = 1;
        rec(i + 1);
        for (size_t j = i + 1; j < B.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            cur.push_back({B[i], B[j]});
            rec(i + 1);
            cur.pop_back();
            used[j] = 0;
        }
        used[i] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Pattern> all_patterns(const std::vector<int>& B0) {
    std::vector<int> B = sorted_unique(B0);
    int b = (int)B.size();
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < b; ++i)
        for (int j = i + 1; j < b; ++j) pairs.push_back({i, j});
    int P = (int)pairs.size();
    std::vector<Pattern> out;
    for (uint32_t mask = 0; mask < (1u << P); ++mask) {
        std::vector<int> deg(b, 0);
        bool ok = true;
        for (int e = 0; e < P && ok; ++e)
            if (mask >> e & 1) {
                if (++deg[pairs[e].first] > 2 || ++deg[pairs[e].second] > 2) ok = false;
            }
        if (!ok) continue;
        // cycles: union-find
        std::vector<int> uf(b);
        std::iota(uf.begin(), uf.end(), 0);
        std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
        int cycles = 0;
        for (int e = 0; e < P; ++e)
            if (mask >> e & 1) {
                int x = find(pairs[e].first), y = find(pairs[e].second);
                if (x == y)
                    ++cycles;
                else
                    uf[x] = y;
            }
        if (cycles > 1) continue;
        if (cycles == 1) {
            // the cycle must be the whole pattern
            int edges = std::popcount(mask);
            int verts = 0;
            for (int i = 0; i < b; ++i) verts += deg[i] > 0;
            if (edges != verts) continue;
            std::set<int> roots;
            for (int i = 0; i < b; ++i)
                if (deg[i] > 0) roots.insert(find(i));
            if (roots.size() != 1) continue;
        }
        Pattern p;
        for (int e = 0; e < P; ++e)
            if (mask >> e & 1) p.push_back({B[pairs[e].first], B[pairs[e].second]});
        out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// boundary vertices on two pairs get a twin with the same neighbours; then plain disjoint paths
bool pattern_by_dp(const EmbeddedGraph& h0, const Pattern& p) {
    EmbeddedGraph h = h0;
    std::map<int, int> uses, twin;
    for (auto [a, b] : p) {
        ++uses[a];
        ++uses[b];
    }
    int next = h.vertex_capacity();
    for (auto [b, c] : uses)
        if (c == 2) twin[b] = next++;
    for (auto [b, t] : twin) h.ensure_vertex(t);
    for (auto [b, t] : twin) {
        for (int w : sorted_unique(h0.neighbors(b))) {
            h.add_edge(t, w);
            auto it = twin.find(w);
            if (it != twin.end() && b < w) h.add_edge(t, it->second);
        }
    }
    Matching m;
    std::map<int, int> seen;
    auto end = [&](int x) { return seen[x]++ == 0 ? x : twin.at(x); };
    for (auto [a, b] : p) {
        int x = end(a), y = end(b);
        m.push_back({std::min(x, y), std::max(x, y)});
    }
    return solve_disjoint_paths(h, m);
}

}  // namespace

bool pattern_realizable(const EmbeddedGraph& g, const std::vector<int>& B, const Pattern& p) {
    if (p.empty()) return true;
    std::vector<int> used;
    for (auto [a, b] : p) {
        used.push_back(a);
        used.push_back(b);
    }
    used = sorted_unique(used);
    std::vector<int> drop;
    for (int b : B)
        if (!contains(used, b)) drop.push_back(b);
    EmbeddedGraph h = drop.empty() ? g : remove_vertices(g, drop);
    if (h.num_vertices() <= 12) return brute_disjoint_paths(h, p);
    return pattern_by_dp(h, p);
}

bool pattern_realizable_dp(const EmbeddedGraph& g, const std::vector<int>& B, const Pattern& p) {
    if (p.empty()) return true;
    std::vector<int> drop;
    for (int b : B)
        if (std::none_of(p.begin(), p.end(), [&](auto q) { return q.first == b || q.second == b; })) drop.push_back(b);
    return pattern_by_dp(drop.empty() ? g : remove_vertices(g, drop), p);
}

LinkageProfile linkage_profile(const EmbeddedGraph& g, const std::vector<int>& B0, const NiceTreeDecomposition& td) {
    LinkageProfile lp;
    lp.boundary = sorted_unique(B0);
    if (lp.boundary.size() > 6) throw Error("BoundaryTooLarge", std::to_string(lp.boundary.size()) + " boundary vertices");
    for (int b : lp.boundary)
        if (!g.has_vertex(b)) throw Error("UnknownVertex", std::to_string(b));
    for (const auto& m : all_matchings(lp.boundary)) {
        if (solve_disjoint_paths(g, m, td)) lp.feasible_dp.insert(m);
        if (solve_m_cycle(g, lp.boundary, m, td)) lp.feasible_mc.insert(m);
    }
    for (const auto& p : all_patterns(lp.boundary))
        if (pattern_realizable(g, lp.boundary, p)) lp.patterns.insert(p);
    return lp;
}

LinkageProfile linkage_profile(const EmbeddedGraph& g, const std::vector<int>& B) {
    return linkage_profile(g, B, nice_decomposition(g));
}

EmbeddedGraph part_graph(const EmbeddedGraph& g, const std::vector<int>& X, const std::vector<int>& B0) {
    std::vector<int> B = sorted_unique(B0);
    std::vector<int> keep = X;
    keep.insert(keep.end(), B.begin(), B.end());
    EmbeddedGraph h = induced(g, sorted_unique(keep));
    for (int e : h.edge_ids())
        if (contains(B, h.edge(e).u) && contains(B, h.edge(e).v)) h.remove_edge(e);
    return h;
}

namespace {

// profile comparison that stops at the first difference
bool same_profile(const EmbeddedGraph& H, const std::vector<int>& B, const LinkageProfile& ref,
                  const std::vector<Pattern>& pats, const std::vector<Matching>& mats) {
    for (const auto& p : pats)
        if (pattern_realizable(H, B, p) != (ref.patterns.count(p) > 0)) return false;
    auto td = nice_decomposition(H);
    for (const auto& m : mats) {
        if (solve_disjoint_paths(H, m, td) != (ref.feasible_dp.count(m) > 0)) return false;
        if (solve_m_cycle(H, B, m, td) != (ref.feasible_mc.count(m) > 0)) return false;
    }
    return true;
}

std::vector<std::vector<int>> permutations(int h) {
    std::vector<int> p(h);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

std::optional<Replacement> replacement_search(const EmbeddedGraph& part, const std::vector<int>& B0, int size_budget,
                                              const SearchLimits& lim) {
    std::vector<int> B = sorted_unique(B0);
    if (B.size() > 6) throw Error("BoundaryTooLarge", std::to_string(B.size()) + " boundary vertices");
    for (int b : B)
        if (!part.has_vertex(b)) throw Error("UnknownVertex", std::to_string(b));
    int nb = (int)B.size();
    int nP = part.num_vertices(), eP = part.num_edges();
    int inner = nP - nb;
    int hmax = std::min(size_budget - nb, inner);
    if (hmax < 0) return std::nullopt;
    long double space = 0;
    for (int h = 0; h <= hmax; ++h) space += std::pow(2.0L, (nb + h) * (nb + h - 1) / 2);
    if (space > (long double)lim.max_candidates)
        throw Error("BudgetExceeded", "candidate space " + std::to_string((double)space) + " over limit");

    LinkageProfile ref = linkage_profile(part, B);
    auto pats = all_patterns(B);
    auto mats = all_matchings(B);
    int base = part.vertex_capacity();
    std::vector<int> roots(B.begin(), B.end());
    long tried = 0;
    for (int h = 0; h <= hmax; ++h) {
        int n = nb + h;
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
        int P = (int)pairs.size();
        std::map<std::pair<int, int>, int> pid;
        for (int e = 0; e < P; ++e) pid[pairs[e]] = e;
        auto perms = permutations(h);
        std::vector<int> rt = roots;
        rt.resize(n, -1);
        for (int c = 0; c <= P; ++c) {
            if (h == inner && c >= eP) break;
            if (c < h) continue;  // new vertices need degree >= 2
            uint64_t mask = c == 0 ? 0 : (1ull << c) - 1;
            uint64_t end = 1ull << P;
            while (mask < end) {
                bool ok = true;
                std::vector<int> deg(n, 0);
                for (int e = 0; e < P; ++e)
                    if (mask >> e & 1) {
                        ++deg[pairs[e].first];
                        ++deg[pairs[e].second];
                    }
                for (int i = nb; i < n && ok; ++i)
                    if (deg[i] < 2) ok = false;
                // canonical under permutations of the new vertices
                for (size_t pi = 1; pi < perms.size() && ok; ++pi) {
                    uint64_t m2 = 0;
                    auto map = [&](int x) { return x < nb ? x : nb + perms[pi][x - nb]; };
                    for (int e = 0; e < P; ++e)
                        if (mask >> e & 1) {
                            int a = map(pairs[e].first), b = map(pairs[e].second);
                            m2 |= 1ull << pid[{std::min(a, b), std::max(a, b)}];
                        }
                    if (m2 < mask) ok = false;
                }
                if (ok) {
                    ++tried;
                    EmbeddedGraph H;
                    for (int b : B) H.ensure_vertex(b);
                    for (int i = 0; i < h; ++i) H.ensure_vertex(base + i);
                    auto id = [&](int x) { return x < nb ? B[x] : base + (x - nb); };
                    for (int e = 0; e < P; ++e)
                        if (mask >> e & 1) H.add_edge(id(pairs[e].first), id(pairs[e].second));
                    if (same_profile(H, B, ref, pats, mats)) {
                        auto model = rooted_minor_model(part, H, rt);
                        if (model) return Replacement{H, *model, tried};
                    }
                }
                if (mask == 0) break;
                // next mask with the same popcount
                uint64_t t = mask | (mask - 1);
                mask = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(mask) + 1));
            }
        }
    }
    return std::nullopt;
}

namespace {

void simplify(EmbeddedGraph& g, int v) {
    std::set<int> seen;
    for (int e : std::vector<int>(g.rotation(v))) {
        if (!g.has_edge(e)) continue;
        int w = g.other(e, v);
        if (w == v || !seen.insert(w).second) g.remove_edge(e);
    }
}

}  // namespace

std::optional<Replacement> greedy_reduction(const EmbeddedGraph& part, const std::vector<int>& B0, long max_trials) {
    std::vector<int> B = sorted_unique(B0);
    if (B.size() > 6) throw Error("BoundaryTooLarge", std::to_string(B.size()) + " boundary vertices");
    for (int b : B)
        if (!part.has_vertex(b)) throw Error("UnknownVertex", std::to_string(b));
    LinkageProfile ref = linkage_profile(part, B);
    auto pats = all_patterns(B);
    auto mats = all_matchings(B);
    EmbeddedGraph W = part;
    std::map<int, std::vector<int>> members;
    for (int v : W.vertices()) members[v] = {v};
    long trials = 0;
    auto ok = [&](const EmbeddedGraph& H) {
        ++trials;
        return same_profile(H, B, ref, pats, mats);
    };
    // interior vertices, farthest from B first
    auto order = [&]() {
        std::vector<int> d(W.vertex_capacity(), -1), q;
        for (int b : B) {
            d[b] = 0;
            q.push_back(b);
        }
        for (size_t i = 0; i < q.size(); ++i)
            for (int w : W.neighbors(q[i]))
                if (d[w] < 0) {
                    d[w] = d[q[i]] + 1;
                    q.push_back(w);
                }
        std::vector<int> xs;
        for (int v : W.vertices())
            if (!contains(B, v)) xs.push_back(v);
        std::stable_sort(xs.begin(), xs.end(), [&](int a, int b) {
            int da = d[a] < 0 ? 1 << 30 : d[a], db = d[b] < 0 ? 1 << 30 : d[b];
            return da != db ? da > db : a > b;
        });
        return xs;
    };
    auto drop = [&](const std::vector<int>& vs) {
        EmbeddedGraph H = remove_vertices(W, vs);
        if (!ok(H)) return false;
        W = std::move(H);
        for (int v : vs) members.erase(v);
        return true;
    };
    // halving batches of far vertices
    for (;;) {
        auto xs = order();
        size_t s = (xs.size() + 1) / 2;
        bool any = false;
        while (s > 1 && trials < max_trials) {
            if (drop(std::vector<int>(xs.begin(), xs.begin() + s))) {
                any = true;
                break;
            }
            s /= 2;
        }
        if (!any) break;
    }
    // single deletions and contractions, then edges
    bool changed = true;
    while (changed && trials < max_trials) {
        changed = false;
        for (int v : order()) {
            if (trials >= max_trials) break;
            if (!W.has_vertex(v)) continue;
            if (drop({v})) {
                changed = true;
                continue;
            }
            for (int e : std::vector<int>(W.rotation(v))) {
                if (trials >= max_trials) break;
                int u = W.other(e, v);
                EmbeddedGraph H = W;
                H.contract_edge(e, u);
                simplify(H, u);
                if (ok(H)) {
                    W = std::move(H);
                    auto& mv = members[v];
                    members[u].insert(members[u].end(), mv.begin(), mv.end());
                    members.erase(v);
                    changed = true;
                    break;
                }
            }
        }
        for (int e : W.edge_ids()) {
            if (trials >= max_trials) break;
            EmbeddedGraph H = W;
            H.remove_edge(e);
            if (ok(H)) {
                W = std::move(H);
                changed = true;
            }
        }
    }
    if (std::make_pair(W.num_vertices(), W.num_edges()) >= std::make_pair(part.num_vertices(), part.num_edges()))
        return std::nullopt;
    Replacement r;
    r.H = W;
    for (int v : W.vertices()) {
        auto m = members[v];
        std::sort(m.begin(), m.end());
        r.model.push_back(m);
    }
    r.candidates = trials;
    return r;
}

bool verify_replacement(const EmbeddedGraph& part, const std::vector<int>& B0, const Replacement& r) {
    std::vector<int> B = sorted_unique(B0);
    if (!(linkage_profile(part, B) == linkage_profile(r.H, B))) return false;
    if (!verify_minor_model(part, r.H, r.model)) return false;
    auto hv = r.H.vertices();
    for (size_t i = 0; i < hv.size(); ++i)
        if (contains(B, hv[i]) && std::find(r.model[i].begin(), r.model[i].end(), hv[i]) == r.model[i].end()) return false;
    if (part.num_vertices() > oracle_limits().minor_host || r.H.num_vertices() > oracle_limits().minor_pattern)
        return true;
    return brute_minor(part, r.H);
}

EmbeddedGraph splice(const EmbeddedGraph& host, const std::vector<int>& X0, const Replacement& r, const std::vector<int>& B0) {
    std::vector<int> X = sorted_unique(X0), B = sorted_unique(B0);
    for (int b : neighborhood(host, X))
        if (!contains(B, b)) throw Error("InvalidInput", "part boundary not inside B");
    EmbeddedGraph g = host;
    std::vector<int> outer_walk;
    {
        FaceSet fs = compute_faces(host);
        int of = outer_face(host, fs);
        if (of >= 0) outer_walk = fs.faces[of].darts;
    }
    auto hv = r.H.vertices();
    if (r.model.size() != hv.size()) throw Error("InvalidInput", "model size");
    std::vector<int> owner(g.vertex_capacity(), -1);
    for (int i = 0; i < (int)hv.size(); ++i)
        for (int x : r.model[i]) {
            if (!contains(X, x) && !contains(B, x)) throw Error("InvalidInput", "branch set leaves the part");
            owner[x] = i;
        }
    auto part_edge = [&](int e) { return contains(X, g.edge(e).u) || contains(X, g.edge(e).v); };
    std::vector<char> keep(g.edge_capacity(), 0);
    std::map<int, int> hidx;
    for (int i = 0; i < (int)hv.size(); ++i) hidx[hv[i]] = i;
    for (int e : r.H.edge_ids()) {
        int a = hidx[r.H.edge(e).u], b = hidx[r.H.edge(e).v];
        int pick = -1;
        for (int x : r.model[a]) {
            for (int f : g.rotation(x))
                if (!keep[f] && part_edge(f) && owner[g.other(f, x)] == b) {
                    pick = f;
                    break;
                }
            if (pick >= 0) break;
        }
        if (pick < 0) throw Error("InvalidInput", "model misses an edge of H");
        keep[pick] = 1;
    }
    // spanning trees of the branch sets, rooted at the boundary vertex or the smallest id
    std::vector<std::pair<int, int>> contract;  // (edge, keep)
    std::vector<char> tree(g.edge_capacity(), 0);
    for (int i = 0; i < (int)hv.size(); ++i) {
        int rep = contains(B, hv[i]) ? hv[i] : *std::min_element(r.model[i].begin(), r.model[i].end());
        std::vector<int> q{rep};
        std::set<int> seen{rep};
        for (size_t a = 0; a < q.size(); ++a)
            for (int f : g.rotation(q[a])) {
                int w = g.other(f, q[a]);
                if (owner[w] == i && part_edge(f) && !seen.count(w) && !keep[f]) {
                    seen.insert(w);
                    q.push_back(w);
                    tree[f] = 1;
                    contract.push_back({f, rep});
                }
            }
        if (seen.size() != r.model[i].size()) throw Error("InvalidInput", "branch set not connected");
    }
    for (int x : X)
        if (owner[x] < 0) g.remove_vertex(x);
    for (int e : g.edge_ids())
        if (part_edge(e) && !keep[e] && !tree[e]) g.remove_edge(e);
    if (g.outer_dart >= 0 && !g.has_edge(g.outer_dart >> 1)) g.outer_dart = -1;
    if (g.outer_dart < 0)
        for (int d : outer_walk)
            if (g.has_edge(d >> 1)) {
                g.outer_dart = d;
                break;
            }
    for (auto [e, rep] : contract) g.contract_edge(e, rep);
    if (g.outer_dart >= 0 && !g.has_edge(g.outer_dart >> 1)) g.outer_dart = -1;
    try {
        validate_embedding(g);
    } catch (const Error& e) {
        throw Error("SpliceNonPlanar", e.what());
    }
    return g;
}

namespace {

EmbeddedGraph trivial_instance(const std::vector<int>& T, bool yes) {
    EmbeddedGraph g;
    for (int t : T) g.ensure_vertex(t);
    int base = T.empty() ? 0 : T.back() + 1;
    if (yes) {
        std::vector<int> tri(T.begin(), T.end());
        for (int i = 0; tri.size() < 3; ++i) {
            g.ensure_vertex(base + i);
            tri.push_back(base + i);
        }
        g.add_edge(tri[0], tri[1]);
        g.add_edge(tri[1], tri[2]);
        g.add_edge(tri[2], tri[0]);
    } else if (T.size() == 2) {
        g.add_edge(T[0], T[1]);
    } else if (T.size() == 1) {
        g.ensure_vertex(base);
        g.add_edge(T[0], base);
    } else if (T.empty()) {
        g.ensure_vertex(0);
    }
    for (int t : T) g.set_terminal(t);
    return g;
}

struct Job {
    int part = 0, sub = 0;
    std::vector<int> X, B;
};

struct JobResult {
    std::optional<Replacement> rep;
    ReplacementRecord rec;
};

JobResult run_job(const EmbeddedGraph& g, const Job& j, const KernelConfig& cfg, int level) {
    JobResult out;
    auto& rec = out.rec;
    rec.level = level;
    rec.part = j.part;
    rec.sub = j.sub;
    rec.boundary = (int)j.B.size();
    EmbeddedGraph P = part_graph(g, j.X, j.B);
    rec.old_size = P.num_vertices();
    rec.new_size = rec.old_size;
    if ((int)j.B.size() > cfg.max_boundary) {
        rec.note = "boundary too large";
        return out;
    }
    std::string how = "search";
    if (P.num_vertices() <= cfg.max_part) {
        int sb = std::min(cfg.budget, P.num_vertices());
        sb = std::min(sb, oracle_limits().minor_pattern);
        SearchLimits lim;
        lim.max_candidates = cfg.max_candidates;
        while (sb >= (int)j.B.size()) {
            try {
                out.rep = replacement_search(P, j.B, sb, lim);
                break;
            } catch (const Error& e) {
                if (e.kind() != "BudgetExceeded") throw;
                --sb;
            }
        }
    }
    if (!out.rep && cfg.max_trials > 0) {
        out.rep = greedy_reduction(P, j.B, cfg.max_trials);
        how = "greedy";
    }
    if (!out.rep) {
        rec.note = "no smaller equivalent";
        return out;
    }
    rec.note = how;
    rec.candidates = out.rep->candidates;
    rec.new_size = out.rep->H.num_vertices();
    rec.replaced = true;
    if (cfg.verify) {
        rec.verified = verify_replacement(P, j.B, *out.rep);
        if (!rec.verified) {
            rec.replaced = false;
            rec.note = "post-hoc check failed";
            out.rep.reset();
        }
    }
    return out;
}

void run_jobs(EmbeddedGraph& g, const std::vector<Job>& jobs, const KernelConfig& cfg, int level, KernelReport& rep) {
    std::vector<JobResult> res(jobs.size());
    int n = (int)jobs.size();
    const EmbeddedGraph& snap = g;
    if (cfg.parallel) {
        std::vector<std::string> err(jobs.size());
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) {
            try {
                res[i] = run_job(snap, jobs[i], cfg, level);
            } catch (const std::exception& e) {
                err[i] = e.what();
            }
        }
        for (const auto& e : err)
            if (!e.empty()) throw Error("KernelJobFailed", e);
    } else {
        for (int i = 0; i < n; ++i) res[i] = run_job(snap, jobs[i], cfg, level);
    }
    EmbeddedGraph cur = g;
    for (int i = 0; i < n; ++i) {
        if (res[i].rep) cur = splice(cur, jobs[i].X, *res[i].rep, jobs[i].B);
        rep.replacements.push_back(res[i].rec);
    }
    g = std::move(cur);
}

ProtrusionDecomposition decompose_with_fallback(const EmbeddedGraph& g, const std::vector<int>& S, int eta,
                                                KernelReport& rep) {
    try {
        return protrusion_decompose(g, S, eta);
    } catch (const Error& e) {
        if (e.kind() != "ModulatorInvalid") throw;
        EmbeddedGraph rest = remove_vertices(g, S);
        int w = nice_decomposition(rest).width();
        rep.notes.push_back("eta raised from " + std::to_string(eta) + " to " + std::to_string(w));
        return protrusion_decompose(g, S, w);
    }
}

}  // namespace

KernelResult kernelize(const EmbeddedGraph& g0, const std::vector<int>& T0, const KernelConfig& cfg) {
    KernelResult out;
    KernelReport& rep = out.report;
    std::vector<int> T = sorted_unique(T0);
    for (int t : T)
        if (!g0.has_vertex(t)) throw Error("UnknownVertex", std::to_string(t));
    validate_embedding(g0);
    rep.n_in = g0.num_vertices();
    rep.m_in = g0.num_edges();
    rep.k = (int)T.size();
    auto finish = [&](EmbeddedGraph g) {
        for (int t : T) g.set_terminal(t);
        rep.n_out = g.num_vertices();
        rep.m_out = g.num_edges();
        out.graph = std::move(g);
        return out;
    };
    if (T.size() <= 2) {
        bool yes = solve_t_cycle(g0, T).has_value();
        rep.decided = yes ? "yes" : "no";
        return finish(trivial_instance(T, yes));
    }
    auto comp = component_of(g0, T[0]);
    for (int t : T)
        if (!std::binary_search(comp.begin(), comp.end(), t)) {
            rep.decided = "no";
            rep.notes.push_back("terminals in different components");
            return finish(trivial_instance(T, false));
        }
    int gk = cfg.g > 0 ? cfg.g : std::max(1, g_of_k(rep.k, cfg.c1, cfg.c2));
    rep.g = gk;

    // Step 1
    ReedResult red = reed_pipeline(g0, T, IsolationBudget{gk}, cfg.parallel);
    EmbeddedGraph g = red.graph;
    rep.n_reduced = g.num_vertices();
    rep.U = (int)red.U.size();

    // Step 2
    std::vector<int> S = red.U;
    S.insert(S.end(), T.begin(), T.end());
    S = sorted_unique(S);
    rep.eta1 = cfg.eta1 > 0 ? cfg.eta1 : 4 * gk;
    ProtrusionDecomposition pd = decompose_with_fallback(g, S, rep.eta1, rep);
    rep.ell = pd.ell();

    if (cfg.level <= 1) {
        std::vector<Job> jobs;
        for (int i = 1; i <= pd.ell(); ++i) jobs.push_back({i, 0, pd.parts[i], pd.neighbor_sets[i]});
        run_jobs(g, jobs, cfg, 1, rep);
        return finish(std::move(g));
    }

    // Step 3: vertices far from B_i inside G_i'
    std::vector<int> dead;
    for (int i = 1; i <= pd.ell(); ++i) {
        const auto& X = pd.parts[i];
        const auto& B = pd.neighbor_sets[i];
        std::vector<int> plus = X;
        plus.insert(plus.end(), B.begin(), B.end());
        EmbeddedGraph gi = induced(g, sorted_unique(plus));
        int gl = std::max(1, g_of_k((int)B.size(), cfg.c1, cfg.c2));
        auto d = radial_multi(gi, compute_faces(gi), B);
        for (int v : X)
            if (d[v] < 0 || d[v] > gl) dead.push_back(v);
    }
    rep.step3_removed = (int)dead.size();
    if (!dead.empty()) g = remove_vertices(g, dead);

    // Step 4
    std::vector<Job> jobs;
    for (int i = 1; i <= pd.ell(); ++i) {
        std::vector<int> X;
        for (int v : pd.parts[i])
            if (g.has_vertex(v)) X.push_back(v);
        if (X.empty()) continue;
        const auto& B = pd.neighbor_sets[i];
        std::vector<int> plus = X;
        plus.insert(plus.end(), B.begin(), B.end());
        EmbeddedGraph gi = induced(g, sorted_unique(plus));
        int eta2 = cfg.eta2 > 0 ? cfg.eta2 : 4 * std::max(1, g_of_k(gk + (int)B.size(), cfg.c1, cfg.c2));
        ProtrusionDecomposition sub = decompose_with_fallback(gi, B, eta2, rep);
        for (int j = 1; j <= sub.ell(); ++j) jobs.push_back({i, j, sub.parts[j], sub.neighbor_sets[j]});
    }
    // Steps 5-6
    run_jobs(g, jobs, cfg, 2, rep);
    return finish(std::move(g));
}

std::string kernel_report_json(const KernelReport& r) {
    using nlohmann::json;
    json j;
    j["n_in"] = r.n_in;
    j["m_in"] = r.m_in;
    j["k"] = r.k;
    j["g"] = r.g;
    j["n_reduced"] = r.n_reduced;
    j["U"] = r.U;
    j["ell"] = r.ell;
    j["eta1"] = r.eta1;
    j["step3_removed"] = r.step3_removed;
    if (!r.decided.empty()) j["decided"] = r.decided;
    json reps = json::array();
    for (const auto& x : r.replacements)
        reps.push_back({{"level", x.level},
                        {"part", x.part},
                        {"sub", x.sub},
                        {"boundary", x.boundary},
                        {"old_size", x.old_size},
                        {"new_size", x.new_size},
                        {"candidates", x.candidates},
                        {"replaced", x.replaced},
                        {"verified", x.verified},
                        {"note", x.note}});
    j["replacements"] = reps;
    j["n_out"] = r.n_out;
    j["m_out"] = r.m_out;
    j["notes"] = r.notes;
    return j.dump(2);
}

}  // namespace tcycle
