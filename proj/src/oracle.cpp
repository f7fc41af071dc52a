#include "tcycle/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>

namespace tcycle {

OracleLimits& oracle_limits() {
    static OracleLimits lim;
    return lim;
}

bool is_proper_matching(const Matching& m) {
    std::set<int> seen;
    for (auto [u, v] : m) {
        if (u == v) return false;
        if (!seen.insert(u).second || !seen.insert(v).second) return false;
    }
    return true;
}

bool is_t_loop(const EmbeddedGraph& g, const std::vector<int>& T, const std::vector<int>& edges) {
    std::set<int> es(edges.begin(), edges.end());
    if (es.size() != edges.size() || edges.empty()) return false;
    CycleWalk w;
    try {
        w = cycle_walk(g, edges);
    } catch (const Error&) {
        return false;
    }
    std::set<int> vs(w.vertices.begin(), w.vertices.end());
    if (vs.size() != w.vertices.size()) return false;
    for (int t : T)
        if (!vs.count(t)) return false;
    return true;
}

namespace {

void check_size(const EmbeddedGraph& g, int limit, const char* what) {
    if (g.num_vertices() > limit)
        throw Error("SizeLimitExceeded", std::string(what) + ": " + std::to_string(g.num_vertices()) + " vertices > limit " + std::to_string(limit));
}

std::vector<int> sorted_unique(std::vector<int> x) {
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    return x;
}

struct TCycleSearch {
    const EmbeddedGraph& g;
    std::vector<char> is_t, in_path, used_e;
    int s = -1, k = 0, covered = 0;
    std::vector<int> pedges{};
    std::vector<int> found{};

    bool reachable_ok(int from) {
        std::vector<char> seen(g.vertex_capacity(), 0);
        std::vector<int> q{from};
        seen[from] = 1;
        bool hit_s = false;
        int hit_t = 0;
        for (size_t i = 0; i < q.size(); ++i) {
            for (int w : g.neighbors(q[i])) {
                if (w == s) hit_s = true;
                if (seen[w] || in_path[w]) continue;
                seen[w] = 1;
                if (is_t[w]) ++hit_t;
                q.push_back(w);
            }
        }
        return hit_s && hit_t == k - covered;
    }

    bool dfs(int v) {
        for (int e : g.rotation(v)) {
            if (used_e[e]) continue;
            int w = g.other(e, v);
            if (w == s) {
                if (!pedges.empty() && e != pedges.front() && covered == k) {
                    found = pedges;
                    found.push_back(e);
                    return true;
                }
                continue;
            }
            if (in_path[w]) continue;
            in_path[w] = 1;
            used_e[e] = 1;
            pedges.push_back(e);
            if (is_t[w]) ++covered;
            bool ok = reachable_ok(w) && dfs(w);
            if (ok) return true;
            if (is_t[w]) --covered;
            pedges.pop_back();
            used_e[e] = 0;
            in_path[w] = 0;
        }
        return false;
    }
};

}  // namespace

std::optional<Witness> brute_t_cycle(const EmbeddedGraph& g, const std::vector<int>& Tin) {
    check_size(g, oracle_limits().t_cycle, "brute_t_cycle");
    if (has_loops(g)) throw Error("InvalidInput", "loops are not supported");
    auto T = sorted_unique(Tin);
    for (int t : T)
        if (!g.has_vertex(t)) throw Error("UnknownVertex", std::to_string(t));
    std::vector<int> starts = T.empty() ? g.vertices() : std::vector<int>{T.front()};
    for (int s : starts) {
        TCycleSearch S{g, std::vector<char>(g.vertex_capacity(), 0), std::vector<char>(g.vertex_capacity(), 0),
                       std::vector<char>(g.edge_capacity(), 0)};
        for (int t : T) S.is_t[t] = 1;
        S.s = s;
        S.k = std::max<int>(1, (int)T.size());
        S.covered = 1;
        S.in_path[s] = 1;
        if (S.dfs(s)) {
            Witness w;
            w.kind = Witness::Kind::Cycle;
            w.edge_sets.push_back(S.found);
            return w;
        }
    }
    return std::nullopt;
}

namespace {
struct PathsSearch {
    const EmbeddedGraph& g;
    const Matching& m;
    std::vector<char> ep, used_v, used_e;

    bool connectable(int a, int b) {
        std::vector<char> seen(g.vertex_capacity(), 0);
        std::vector<int> q{a};
        seen[a] = 1;
        for (size_t i = 0; i < q.size(); ++i) {
            for (int e : g.rotation(q[i])) {
                if (used_e[e]) continue;
                int w = g.other(e, q[i]);
                if (w == b) return true;
                if (seen[w] || ep[w] || used_v[w]) continue;
                seen[w] = 1;
                q.push_back(w);
            }
        }
        return false;
    }

    bool rest_ok(size_t i) {
        for (size_t j = i; j < m.size(); ++j)
            if (!connectable(m[j].first, m[j].second)) return false;
        return true;
    }

    bool pair(size_t i) {
        if (i == m.size()) return true;
        if (!rest_ok(i)) return false;
        return walk(i, m[i].first);
    }

    bool walk(size_t i, int x) {
        int target = m[i].second;
        for (int e : g.rotation(x)) {
            if (used_e[e]) continue;
            int w = g.other(e, x);
            if (w == target) {
                used_e[e] = 1;
                if (pair(i + 1)) return true;
                used_e[e] = 0;
                continue;
            }
            if (ep[w] || used_v[w]) continue;
            used_v[w] = 1;
            used_e[e] = 1;
            if (connectable(w, target) && walk(i, w)) return true;
            used_e[e] = 0;
            used_v[w] = 0;
        }
        return false;
    }
};
}  // namespace

bool brute_disjoint_paths(const EmbeddedGraph& g, const Matching& m) {
    for (auto [u, v] : m) {
        if (u == v) throw Error("InvalidInput", "pair with equal endpoints");
        if (!g.has_vertex(u) || !g.has_vertex(v)) throw Error("UnknownVertex", "matched vertex missing");
    }
    check_size(g, oracle_limits().disjoint_paths, "brute_disjoint_paths");
    if (m.empty()) return true;
    PathsSearch S{g, m, std::vector<char>(g.vertex_capacity(), 0), std::vector<char>(g.vertex_capacity(), 0),
                  std::vector<char>(g.edge_capacity(), 0)};
    for (auto [u, v] : m) S.ep[u] = S.ep[v] = 1;
    return S.pair(0);
}

namespace {

// Abstract simple graph on 0..n-1 with bitmask adjacency.
struct MaskGraph {
    int n = 0;
    std::vector<uint32_t> adj;
    std::vector<int> ids;  // original vertex ids
};

MaskGraph to_mask(const EmbeddedGraph& g) {
    MaskGraph m;
    m.ids = g.vertices();
    m.n = (int)m.ids.size();
    std::map<int, int> idx;
    for (int i = 0; i < m.n; ++i) idx[m.ids[i]] = i;
    m.adj.assign(m.n, 0);
    for (int e : g.edge_ids()) {
        int a = idx[g.edge(e).u], b = idx[g.edge(e).v];
        if (a == b) continue;
        m.adj[a] |= 1u << b;
        m.adj[b] |= 1u << a;
    }
    return m;
}

struct MinorSearch {
    const MaskGraph& H;
    std::vector<std::vector<int>> padj;
    std::vector<int> order;
    std::vector<uint32_t> branch;
    int p = 0;
    std::vector<int> root;  // mask index or -1, per pattern vertex

    bool place(int i, uint32_t free) {
        if (i == p) return true;
        int remaining = p - i - 1;
        int pv = order[i];
        int rt = root.empty() ? -1 : root[pv];
        uint32_t avail = rt >= 0 ? free | (1u << rt) : free;
        int maxsize = std::popcount(avail) - remaining;
        if (maxsize < 1) return false;
        std::vector<uint32_t> need;
        for (int q : padj[pv])
            if (branch[q]) need.push_back(branch[q]);
        bool done = false;
        std::function<void(uint32_t, uint32_t, uint32_t, uint32_t)> esu = [&](uint32_t S, uint32_t ext, uint32_t nS, uint32_t above) {
            if (done) return;
            bool ok = true;
            for (uint32_t b : need)
                if (!(nS & b)) {
                    ok = false;
                    break;
                }
            if (ok) {
                branch[pv] = S;
                if (place(i + 1, free & ~S)) {
                    done = true;
                    return;
                }
                branch[pv] = 0;
            }
            if (std::popcount(S) >= maxsize) return;
            while (ext && !done) {
                int w = std::countr_zero(ext);
                ext &= ext - 1;
                uint32_t wb = 1u << w;
                uint32_t next = ext | (H.adj[w] & free & above & ~S & ~nS & ~wb);
                esu(S | wb, next, (nS | H.adj[w]) & ~(S | wb), above);
            }
        };
        if (rt >= 0) {
            uint32_t rb = 1u << rt;
            esu(rb, H.adj[rt] & free & ~rb, H.adj[rt] & ~rb, ~0u);
            return done;
        }
        for (uint32_t r = free; r && !done; r &= r - 1) {
            int root_i = std::countr_zero(r);
            uint32_t rb = 1u << root_i;
            uint32_t above = root_i >= 31 ? 0u : ~((2u << root_i) - 1u);
            esu(rb, H.adj[root_i] & free & above, H.adj[root_i] & ~rb, above);
        }
        return done;
    }
};

std::optional<std::vector<std::vector<int>>> minor_search(const EmbeddedGraph& host, const EmbeddedGraph& pattern,
                                                          const std::vector<int>* roots) {
    if (pattern.num_vertices() > oracle_limits().minor_pattern)
        throw Error("SizeLimitExceeded", "brute_minor pattern too large");
    check_size(host, oracle_limits().minor_host, "brute_minor host");
    MaskGraph H = to_mask(host);
    auto pv = pattern.vertices();
    int p = (int)pv.size();
    if (p == 0) return std::vector<std::vector<int>>{};
    if (p > H.n) return std::nullopt;
    std::map<int, int> pidx;
    for (int i = 0; i < p; ++i) pidx[pv[i]] = i;
    std::vector<std::vector<int>> padj(p);
    std::set<std::pair<int, int>> pe;
    for (int e : pattern.edge_ids()) {
        int a = pidx[pattern.edge(e).u], b = pidx[pattern.edge(e).v];
        if (a == b) continue;
        if (pe.insert({std::min(a, b), std::max(a, b)}).second) {
            padj[a].push_back(b);
            padj[b].push_back(a);
        }
    }
    int he = 0;
    for (int i = 0; i < H.n; ++i) he += std::popcount(H.adj[i]);
    if ((int)pe.size() > he / 2) return std::nullopt;
    std::vector<int> root;
    uint32_t all = H.n >= 32 ? ~0u : ((1u << H.n) - 1u);
    if (roots) {
        if ((int)roots->size() != p) throw Error("InvalidInput", "one root slot per pattern vertex");
        std::map<int, int> hidx;
        for (int i = 0; i < H.n; ++i) hidx[H.ids[i]] = i;
        root.assign(p, -1);
        for (int i = 0; i < p; ++i) {
            int r = (*roots)[i];
            if (r < 0) continue;
            auto it = hidx.find(r);
            if (it == hidx.end()) throw Error("UnknownVertex", std::to_string(r));
            root[i] = it->second;
            all &= ~(1u << it->second);
        }
    }
    std::vector<int> order;
    std::vector<char> placed(p, 0);
    for (int step = 0; step < p; ++step) {
        int best = -1, bc = -1, bd = -1, br = -1;
        for (int i = 0; i < p; ++i) {
            if (placed[i]) continue;
            int c = 0;
            for (int q : padj[i]) c += placed[q];
            int d = (int)padj[i].size();
            int rr = !root.empty() && root[i] >= 0;
            if (rr > br || (rr == br && (c > bc || (c == bc && d > bd)))) {
                best = i;
                bc = c;
                bd = d;
                br = rr;
            }
        }
        placed[best] = 1;
        order.push_back(best);
    }
    MinorSearch S{H, padj, order, std::vector<uint32_t>(p, 0), p, root};
    if (!S.place(0, all)) return std::nullopt;
    std::vector<std::vector<int>> model(p);
    for (int i = 0; i < p; ++i)
        for (uint32_t x = S.branch[i]; x; x &= x - 1) model[i].push_back(H.ids[std::countr_zero(x)]);
    return model;
}

}  // namespace

std::optional<std::vector<std::vector<int>>> brute_minor_model(const EmbeddedGraph& host, const EmbeddedGraph& pattern) {
    return minor_search(host, pattern, nullptr);
}

std::optional<std::vector<std::vector<int>>> rooted_minor_model(const EmbeddedGraph& host, const EmbeddedGraph& pattern,
                                                                const std::vector<int>& roots) {
    auto m = minor_search(host, pattern, &roots);
    if (!m) return m;
    for (size_t i = 0; i < roots.size(); ++i)
        if (roots[i] >= 0 && std::find((*m)[i].begin(), (*m)[i].end(), roots[i]) == (*m)[i].end())
            throw Error("InternalError", "root lost from its branch set");
    return m;
}

bool brute_minor(const EmbeddedGraph& host, const EmbeddedGraph& pattern) {
    return brute_minor_model(host, pattern).has_value();
}

bool verify_minor_model(const EmbeddedGraph& host, const EmbeddedGraph& pattern, const std::vector<std::vector<int>>& model) {
    auto pv = pattern.vertices();
    if (model.size() != pv.size()) return false;
    std::vector<int> owner(host.vertex_capacity(), -1);
    for (int i = 0; i < (int)model.size(); ++i) {
        if (model[i].empty()) return false;
        for (int x : model[i]) {
            if (!host.has_vertex(x) || owner[x] != -1) return false;
            owner[x] = i;
        }
        std::vector<int> q{model[i][0]};
        std::set<int> seen{model[i][0]};
        for (size_t a = 0; a < q.size(); ++a)
            for (int w : host.neighbors(q[a]))
                if (owner[w] == i && seen.insert(w).second) q.push_back(w);
        if (seen.size() != model[i].size()) return false;
    }
    std::map<int, int> pidx;
    for (int i = 0; i < (int)pv.size(); ++i) pidx[pv[i]] = i;
    for (int e : pattern.edge_ids()) {
        int a = pidx[pattern.edge(e).u], b = pidx[pattern.edge(e).v];
        if (a == b) continue;
        bool hit = false;
        for (int x : model[a]) {
            for (int w : host.neighbors(x))
                if (owner[w] == b) {
                    hit = true;
                    break;
                }
            if (hit) break;
        }
        if (!hit) return false;
    }
    return true;
}

std::optional<std::vector<std::vector<int>>> find_minor_model(const EmbeddedGraph& host, const EmbeddedGraph& pattern, int attempts) {
    if (host.num_vertices() <= oracle_limits().minor_host) return brute_minor_model(host, pattern);
    int target = std::min(oracle_limits().minor_host, 14);
    auto hv = host.vertices();
    std::map<int, int> idx;
    for (int i = 0; i < (int)hv.size(); ++i) idx[hv[i]] = i;
    for (int a = 0; a < attempts; ++a) {
        std::mt19937 rng(1000003u * (unsigned)a + 17u);
        int n = (int)hv.size();
        std::vector<int> rep(n);
        for (int i = 0; i < n; ++i) rep[i] = i;
        std::vector<std::set<int>> adj(n);
        for (int e : host.edge_ids()) {
            int x = idx[host.edge(e).u], y = idx[host.edge(e).v];
            if (x == y) continue;
            adj[x].insert(y);
            adj[y].insert(x);
        }
        std::vector<std::vector<int>> members(n);
        for (int i = 0; i < n; ++i) members[i] = {hv[i]};
        std::vector<int> alive;
        for (int i = 0; i < n; ++i) alive.push_back(i);
        // vertices without neighbours can only be dropped
        while ((int)alive.size() > target) {
            std::vector<int> cand;
            size_t best = SIZE_MAX;
            for (int x : alive) {
                if (adj[x].empty()) continue;
                size_t w = members[x].size() * 4 + adj[x].size();
                if (w < best) {
                    best = w;
                    cand.clear();
                }
                if (w == best) cand.push_back(x);
            }
            if (cand.empty()) {
                alive.pop_back();
                continue;
            }
            int x = cand[rng() % cand.size()];
            std::vector<int> nb(adj[x].begin(), adj[x].end());
            int y = nb[rng() % nb.size()];
            for (int z : adj[y]) {
                if (z == x) continue;
                adj[z].erase(y);
                adj[z].insert(x);
                adj[x].insert(z);
            }
            adj[x].erase(y);
            adj[y].clear();
            members[x].insert(members[x].end(), members[y].begin(), members[y].end());
            members[y].clear();
            alive.erase(std::find(alive.begin(), alive.end(), y));
        }
        EmbeddedGraph small;
        std::map<int, int> sid;
        for (int x : alive) sid[x] = small.add_vertex();
        for (int x : alive)
            for (int z : adj[x])
                if (x < z && sid.count(z)) small.add_edge(sid[x], sid[z]);
        auto m = brute_minor_model(small, pattern);
        if (!m) continue;
        std::vector<int> back(alive.size());
        for (auto [x, s] : sid) back[s] = x;
        std::vector<std::vector<int>> model;
        for (const auto& bs : *m) {
            std::vector<int> full;
            for (int s : bs) full.insert(full.end(), members[back[s]].begin(), members[back[s]].end());
            std::sort(full.begin(), full.end());
            model.push_back(full);
        }
        if (verify_minor_model(host, pattern, model)) return model;
    }
    return std::nullopt;
}

namespace {
struct CycleRec {
    uint64_t on = 0;     // cycle vertices
    uint64_t inner = 0;  // vertices strictly on the chosen side
};

int longest_chain(std::vector<CycleRec>& cs, int cap) {
    std::sort(cs.begin(), cs.end(), [](const CycleRec& a, const CycleRec& b) {
        return std::popcount(a.inner) < std::popcount(b.inner);
    });
    std::vector<int> best(cs.size(), 1);
    int top = cs.empty() ? 0 : 1;
    for (size_t i = 0; i < cs.size(); ++i) {
        for (size_t j = 0; j < i; ++j)
            if ((cs[j].on & ~cs[i].inner) == 0 && best[j] + 1 > best[i]) best[i] = best[j] + 1;
        top = std::max(top, best[i]);
        if (top >= cap) return top;
    }
    return top;
}
}  // namespace

bool brute_isolation(const EmbeddedGraph& g, const std::vector<int>& T, int v, int l) {
    if (!g.has_vertex(v)) throw Error("UnknownVertex", std::to_string(v));
    check_size(g, oracle_limits().isolation, "brute_isolation");
    for (int t : T)
        if (t == v) return false;
    auto comp = component_of(g, v);
    EmbeddedGraph h = induced(g, comp);
    std::vector<int> terms;
    for (int t : T)
        if (std::binary_search(comp.begin(), comp.end(), t)) terms.push_back(t);
    if (terms.empty()) return true;
    if (has_parallel_edges(h) || has_loops(h)) throw Error("InvalidInput", "brute_isolation needs a simple graph");
    FaceSet fs = compute_faces(h);
    std::map<int, int> idx;
    for (int i = 0; i < (int)comp.size(); ++i) idx[comp[i]] = i;
    std::vector<CycleRec> sep;
    std::vector<char> cut(h.edge_capacity(), 0);
    enumerate_cycles(h, [&](const std::vector<int>& verts, const std::vector<int>& edges) {
        uint64_t on = 0;
        for (int x : verts) on |= 1ull << idx[x];
        for (int t : terms)
            if (on >> idx[t] & 1) return true;
        for (int e : edges) cut[e] = 1;
        auto reg = face_regions(h, fs, cut, nullptr);
        for (int e : edges) cut[e] = 0;
        int side = reg[fs.vertex_faces[terms[0]][0]];
        for (int t : terms)
            if (reg[fs.vertex_faces[t][0]] != side) return true;
        bool v_on = on >> idx[v] & 1;
        if (!v_on && reg[fs.vertex_faces[v][0]] == side) return true;
        CycleRec r;
        r.on = on;
        for (int x : comp)
            if (!(on >> idx[x] & 1) && reg[fs.vertex_faces[x][0]] != side) r.inner |= 1ull << idx[x];
        sep.push_back(r);
        return true;
    });
    return longest_chain(sep, l + 1) >= l + 1;
}

int brute_max_concentric(const EmbeddedGraph& g, int cap) {
    check_size(g, oracle_limits().isolation, "brute_max_concentric");
    if (has_parallel_edges(g) || has_loops(g)) throw Error("InvalidInput", "needs a simple graph");
    FaceSet fs = compute_faces(g);
    int outer = outer_face(g, fs);
    auto vs = g.vertices();
    std::map<int, int> idx;
    for (int i = 0; i < (int)vs.size(); ++i) idx[vs[i]] = i;
    std::vector<CycleRec> all;
    enumerate_cycles(g, [&](const std::vector<int>& verts, const std::vector<int>& edges) {
        CycleRec r;
        for (int x : verts) r.on |= 1ull << idx[x];
        auto in = inside_faces(g, fs, edges, outer);
        for (int x : vs)
            if (!(r.on >> idx[x] & 1) && !fs.vertex_faces[x].empty() && in[fs.vertex_faces[x][0]]) r.inner |= 1ull << idx[x];
        all.push_back(r);
        return true;
    });
    return longest_chain(all, cap);
}

int loop_cost(const std::vector<int>& loop_edges, const ConcentricSequence& C) {
    int c = 0;
    for (int e : loop_edges)
        if (!C.on_any_cycle(e)) ++c;
    return c;
}

std::vector<Witness> enumerate_cheap_loops(const EmbeddedGraph& g, const ConcentricSequence& C, const std::vector<int>& Tin) {
    check_size(g, oracle_limits().cheap_loops, "enumerate_cheap_loops");
    auto T = sorted_unique(Tin);
    int r = C.depth();
    for (int t : T)
        if (C.vertex_in_disk(g, r, t)) throw Error("InvalidConfiguration", "terminal " + std::to_string(t) + " lies in D_r");
    std::vector<Witness> out;
    int best = INT32_MAX;
    auto consider = [&](const std::vector<int>& verts, const std::vector<int>& edges) {
        for (int t : T)
            if (std::find(verts.begin(), verts.end(), t) == verts.end()) return true;
        int c = loop_cost(edges, C);
        if (c < best) {
            best = c;
            out.clear();
        }
        if (c == best) {
            Witness w;
            w.edge_sets.push_back(edges);
            out.push_back(std::move(w));
        }
        return true;
    };
    if (T.empty())
        enumerate_cycles(g, consider);
    else
        enumerate_cycles_through(g, T.front(), consider);
    return out;
}

}  // namespace tcycle
