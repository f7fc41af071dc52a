#include "tcycle/dp.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>

namespace tcycle {

namespace {

constexpr int MAXB = 64;
constexpr int16_t DEG0 = 0;
constexpr int16_t DEG2 = 1;
constexpr int16_t MATE0 = 2;
constexpr int16_t ANCH0 = 2 + MAXB;

enum class Mode { Cycle, Paths };

struct St {
    std::vector<int16_t> c;
    uint8_t closed = 0;

    std::string key() const {
        std::string k(reinterpret_cast<const char*>(c.data()), c.size() * sizeof(int16_t));
        k.push_back((char)closed);
        return k;
    }
};

int deg(int16_t x) { return x == DEG0 ? 0 : x == DEG2 ? 2 : 1; }

struct Back {
    int a = -1, b = -1;
    std::vector<int> edges;
};

struct Table {
    std::vector<St> states;
    std::vector<Back> back;
    std::unordered_map<std::string, int> index;

    void add(St s, Back b) {
        auto k = s.key();
        if (index.count(k)) return;
        index.emplace(std::move(k), (int)states.size());
        states.push_back(std::move(s));
        back.push_back(std::move(b));
    }
};

struct Ctx {
    const EmbeddedGraph& g;
    Mode mode;
    std::vector<int> tindex;   // per vertex, -1 if not a terminal
    std::vector<int> partner;  // per terminal index (paths mode)
    bool keep_back = false;

    bool is_term(int v) const { return tindex[v] >= 0; }
    bool matched(int a, int b) const { return partner[a] == b; }

    bool add_edge(St& s, const std::vector<int>& bag, int a, int b) const {
        if (s.closed) return false;
        int da = deg(s.c[a]), db = deg(s.c[b]);
        if (da == 2 || db == 2) return false;
        if (mode == Mode::Paths && ((is_term(bag[a]) && da) || (is_term(bag[b]) && db))) return false;
        if (da == 0 && db == 0) {
            s.c[a] = MATE0 + b;
            s.c[b] = MATE0 + a;
            return true;
        }
        if (da == 0 || db == 0) {
            if (db == 0) std::swap(a, b);
            // a is fresh, b is an end
            int16_t eb = s.c[b];
            s.c[a] = eb;
            if (eb < ANCH0) s.c[eb - MATE0] = MATE0 + a;
            s.c[b] = DEG2;
            return true;
        }
        if (s.c[a] == MATE0 + b) {
            if (mode != Mode::Cycle) return false;
            for (int i = 0; i < (int)s.c.size(); ++i)
                if (i != a && i != b && deg(s.c[i]) == 1) return false;
            s.c[a] = s.c[b] = DEG2;
            s.closed = 1;
            return true;
        }
        int16_t ea = s.c[a], eb = s.c[b];
        if (ea >= ANCH0 && eb >= ANCH0) {
            if (!matched(ea - ANCH0, eb - ANCH0)) return false;
        } else if (ea >= ANCH0) {
            s.c[eb - MATE0] = ea;
        } else if (eb >= ANCH0) {
            s.c[ea - MATE0] = eb;
        } else {
            s.c[ea - MATE0] = eb;
            s.c[eb - MATE0] = ea;
        }
        s.c[a] = s.c[b] = DEG2;
        return true;
    }

    bool forget(St& s, int p, int v) const {
        int16_t x = s.c[p];
        int d = deg(x);
        if (mode == Mode::Cycle) {
            if (is_term(v) ? d != 2 : d == 1) return false;
        } else if (is_term(v)) {
            if (d != 1) return false;
            if (x >= ANCH0) {
                if (!matched(x - ANCH0, tindex[v])) return false;
            } else {
                s.c[x - MATE0] = ANCH0 + tindex[v];
            }
        } else if (d == 1) {
            return false;
        }
        s.c.erase(s.c.begin() + p);
        for (auto& y : s.c)
            if (y >= MATE0 && y < ANCH0 && y - MATE0 > p) --y;
        return true;
    }

    std::optional<St> join(const St& A, const St& B, const std::vector<int>& bag) const {
        auto nonempty = [](const St& s) {
            for (auto y : s.c)
                if (y != DEG0) return true;
            return false;
        };
        if (A.closed && B.closed) return std::nullopt;
        if ((A.closed && nonempty(B)) || (B.closed && nonempty(A))) return std::nullopt;
        int k = (int)bag.size();
        St R;
        R.c.assign(k, DEG0);
        R.closed = A.closed | B.closed;
        bool any_link = false;
        for (int i = 0; i < k; ++i) {
            int d = deg(A.c[i]) + deg(B.c[i]);
            if (d > 2) return std::nullopt;
            if (mode == Mode::Paths && is_term(bag[i]) && d > 1) return std::nullopt;
            if (d == 2) R.c[i] = DEG2;
            if (deg(A.c[i]) == 1 && deg(B.c[i]) == 1) any_link = true;
        }
        if (!any_link) {
            // nothing to merge: ends keep their own partners
            for (int i = 0; i < k; ++i) {
                if (deg(A.c[i]) == 1) R.c[i] = A.c[i];
                if (deg(B.c[i]) == 1) R.c[i] = B.c[i];
            }
            return R;
        }
        // link multigraph over positions and anchors
        int na = (int)partner.size();
        int nn = k + na;
        std::vector<std::vector<std::pair<int, int>>> adj(nn);
        int ne = 0;
        for (const St* S : {&A, &B}) {
            for (int i = 0; i < k; ++i) {
                int16_t y = S->c[i];
                if (deg(y) != 1) continue;
                int j = y >= ANCH0 ? k + (y - ANCH0) : y - MATE0;
                if (j < k && j < i) continue;
                adj[i].push_back({j, ne});
                adj[j].push_back({i, ne});
                ++ne;
            }
        }
        std::vector<char> used(ne, 0), seen(nn, 0);
        auto walk = [&](int start) {
            int cur = start;
            seen[cur] = 1;
            while (true) {
                int nxt = -1;
                for (auto [w, id] : adj[cur])
                    if (!used[id]) {
                        used[id] = 1;
                        nxt = w;
                        break;
                    }
                if (nxt < 0) return cur;
                cur = nxt;
                seen[cur] = 1;
            }
        };
        bool open_end = false;
        for (int x = 0; x < nn; ++x) {
            if (seen[x] || adj[x].size() != 1) continue;
            int y = walk(x);
            if (x < k) open_end = true;
            if (x >= k && y >= k) {
                if (!matched(x - k, y - k)) return std::nullopt;
            } else if (x >= k) {
                R.c[y] = ANCH0 + (x - k);
            } else if (y >= k) {
                R.c[x] = ANCH0 + (y - k);
            } else {
                R.c[x] = MATE0 + y;
                R.c[y] = MATE0 + x;
            }
        }
        int cycles = 0;
        for (int x = 0; x < nn; ++x) {
            if (seen[x] || adj[x].empty()) continue;
            walk(x);
            ++cycles;
        }
        if (cycles) {
            if (mode != Mode::Cycle || cycles > 1 || R.closed || open_end) return std::nullopt;
            R.closed = 1;
        }
        return R;
    }
};

struct Run {
    std::vector<Table> tab;
    bool accepted = false;
    int acc_state = -1;
};

Run run_dp(const Ctx& cx, const NiceTreeDecomposition& td) {
    const EmbeddedGraph& g = cx.g;
    for (const auto& b : td.bags)
        if ((int)b.size() > MAXB) throw Error("TooWide", "bag of size " + std::to_string(b.size()));
    std::vector<int> forgotten_at(g.vertex_capacity(), -1);
    auto order = td.postorder();
    std::vector<int> rank(td.size());
    for (int i = 0; i < (int)order.size(); ++i) rank[order[i]] = i;
    for (int x : order)
        if (td.kind[x] == NodeKind::Forget) forgotten_at[td.vertex[x]] = x;
    Run run;
    run.tab.resize(td.size());
    for (int x : order) {
        Table& T = run.tab[x];
        const auto& bag = td.bags[x];
        switch (td.kind[x]) {
            case NodeKind::Leaf: T.add(St{}, Back{}); break;
            case NodeKind::Introduce: {
                int c = td.children[x][0];
                int p = (int)(std::lower_bound(bag.begin(), bag.end(), td.vertex[x]) - bag.begin());
                const Table& C = run.tab[c];
                for (int i = 0; i < (int)C.states.size(); ++i) {
                    St s = C.states[i];
                    for (auto& y : s.c)
                        if (y >= MATE0 && y < ANCH0 && y - MATE0 >= p) ++y;
                    s.c.insert(s.c.begin() + p, DEG0);
                    T.add(std::move(s), Back{i, -1, {}});
                }
                break;
            }
            case NodeKind::Forget: {
                int c = td.children[x][0];
                int v = td.vertex[x];
                const auto& cbag = td.bags[c];
                int p = (int)(std::lower_bound(cbag.begin(), cbag.end(), v) - cbag.begin());
                // edges from v to vertices still in the bag
                std::vector<std::pair<int, int>> inc;  // (edge, position in child bag)
                for (int e : g.rotation(v)) {
                    int w = g.other(e, v);
                    if (w == v) throw Error("InvalidInput", "loops are not supported");
                    if (forgotten_at[w] >= 0 && rank[forgotten_at[w]] < rank[x]) continue;
                    int q = (int)(std::lower_bound(cbag.begin(), cbag.end(), w) - cbag.begin());
                    if (q >= (int)cbag.size() || cbag[q] != w) throw Error("InvalidDecomposition", "edge not covered at forget node");
                    inc.push_back({e, q});
                }
                std::sort(inc.begin(), inc.end());
                const Table& C = run.tab[c];
                int m = (int)inc.size();
                for (int i = 0; i < (int)C.states.size(); ++i) {
                    const St& base = C.states[i];
                    auto attempt = [&](std::initializer_list<int> pick) {
                        St s = base;
                        std::vector<int> es;
                        for (int j : pick) {
                            if (!cx.add_edge(s, cbag, p, inc[j].second)) return;
                            es.push_back(inc[j].first);
                        }
                        if (!cx.forget(s, p, v)) return;
                        T.add(std::move(s), Back{i, -1, cx.keep_back ? es : std::vector<int>{}});
                    };
                    attempt({});
                    for (int a = 0; a < m; ++a) {
                        attempt({a});
                        for (int b = a + 1; b < m; ++b) attempt({a, b});
                    }
                }
                break;
            }
            case NodeKind::Join: {
                const Table& L = run.tab[td.children[x][0]];
                const Table& R = run.tab[td.children[x][1]];
                for (int i = 0; i < (int)L.states.size(); ++i)
                    for (int j = 0; j < (int)R.states.size(); ++j) {
                        auto s = cx.join(L.states[i], R.states[j], bag);
                        if (s) T.add(std::move(*s), Back{i, j, {}});
                    }
                break;
            }
        }
        // children tables are no longer needed unless we rebuild a witness
        if (!cx.keep_back)
            for (int c : td.children[x]) {
                run.tab[c] = Table{};
            }
    }
    const Table& R = run.tab[td.root];
    for (int i = 0; i < (int)R.states.size(); ++i) {
        const St& s = R.states[i];
        if (!s.c.empty()) continue;
        if (cx.mode == Mode::Cycle ? s.closed : !s.closed) {
            run.accepted = true;
            run.acc_state = i;
            break;
        }
    }
    return run;
}

void checked(const EmbeddedGraph& g, const NiceTreeDecomposition& td) {
    try {
        validate_nice(g, td);
    } catch (const Error& e) {
        throw Error("InvalidDecomposition", e.what());
    }
    if (!td.bags.empty() && !td.bags[td.root].empty()) throw Error("InvalidDecomposition", "root bag must be empty");
}

}  // namespace

SubdividedInstance subdivide(const EmbeddedGraph& g, const Matching& m) {
    SubdividedInstance s;
    s.graph = g;
    s.graph.clear_terminals();
    s.origin_pairs = m;
    for (auto [u, v] : m) {
        int w = s.graph.add_vertex();
        s.graph.add_edge(u, w);
        s.graph.add_edge(w, v);
        s.graph.set_terminal(w);
        s.subdivision_vertices.push_back(w);
    }
    return s;
}

std::optional<Witness> solve_t_cycle(const EmbeddedGraph& g, const std::vector<int>& T, const NiceTreeDecomposition& td) {
    checked(g, td);
    Ctx cx{g, Mode::Cycle, std::vector<int>(g.vertex_capacity(), -1), {}, true};
    int ti = 0;
    for (int t : T) {
        if (!g.has_vertex(t)) throw Error("UnknownVertex", std::to_string(t));
        if (cx.tindex[t] < 0) cx.tindex[t] = ti++;
    }
    Run run = run_dp(cx, td);
    if (!run.accepted) return std::nullopt;
    std::vector<int> edges;
    std::vector<std::pair<int, int>> st{{td.root, run.acc_state}};
    while (!st.empty()) {
        auto [x, i] = st.back();
        st.pop_back();
        const Back& b = run.tab[x].back[i];
        edges.insert(edges.end(), b.edges.begin(), b.edges.end());
        if (td.kind[x] == NodeKind::Join) {
            st.push_back({td.children[x][0], b.a});
            st.push_back({td.children[x][1], b.b});
        } else if (td.kind[x] != NodeKind::Leaf) {
            st.push_back({td.children[x][0], b.a});
        }
    }
    std::sort(edges.begin(), edges.end());
    if (!is_t_loop(g, T, edges)) throw Error("InternalError", "reconstructed witness is not a T-loop");
    Witness w;
    w.kind = Witness::Kind::Cycle;
    w.edge_sets.push_back(cycle_walk(g, edges).edges);
    return w;
}

std::optional<Witness> solve_t_cycle(const EmbeddedGraph& g, const std::vector<int>& T) {
    return solve_t_cycle(g, T, nice_decomposition(g));
}

bool solve_disjoint_paths(const EmbeddedGraph& g, const Matching& m, const NiceTreeDecomposition& td) {
    for (auto [u, v] : m) {
        if (u == v) throw Error("InvalidInput", "pair with equal endpoints");
        if (!g.has_vertex(u) || !g.has_vertex(v)) throw Error("UnknownVertex", "matched vertex missing");
    }
    if (!is_proper_matching(m)) throw Error("InvalidInput", "not a matching");
    if (m.empty()) return true;
    checked(g, td);
    Ctx cx{g, Mode::Paths, std::vector<int>(g.vertex_capacity(), -1), std::vector<int>(2 * m.size()), false};
    for (int i = 0; i < (int)m.size(); ++i) {
        cx.tindex[m[i].first] = 2 * i;
        cx.tindex[m[i].second] = 2 * i + 1;
        cx.partner[2 * i] = 2 * i + 1;
        cx.partner[2 * i + 1] = 2 * i;
    }
    return run_dp(cx, td).accepted;
}

bool solve_disjoint_paths(const EmbeddedGraph& g, const Matching& m) {
    if (m.empty()) return true;
    return solve_disjoint_paths(g, m, nice_decomposition(g));
}

TreeDecomposition extend_for_subdivision(const TreeDecomposition& td, const SubdividedInstance& s) {
    TreeDecomposition out = td;
    auto par = td.parents();
    std::vector<int> depth(td.size(), 0);
    {
        std::vector<int> st{td.root};
        std::vector<char> seen(td.size(), 0);
        seen[td.root] = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : td.adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    depth[y] = depth[x] + 1;
                    st.push_back(y);
                }
        }
    }
    auto holder = [&](int v) {
        for (int x = 0; x < td.size(); ++x)
            if (std::binary_search(td.bags[x].begin(), td.bags[x].end(), v)) return x;
        throw Error("InvalidDecomposition", "vertex " + std::to_string(v) + " in no bag");
    };
    for (size_t i = 0; i < s.origin_pairs.size(); ++i) {
        int w = s.subdivision_vertices[i];
        int a = holder(s.origin_pairs[i].first), b = holder(s.origin_pairs[i].second);
        std::vector<int> path;
        while (depth[a] > depth[b]) path.push_back(a), a = par[a];
        while (depth[b] > depth[a]) path.push_back(b), b = par[b];
        while (a != b) {
            path.push_back(a);
            path.push_back(b);
            a = par[a];
            b = par[b];
        }
        path.push_back(a);
        for (int x : path) {
            auto& bg = out.bags[x];
            bg.insert(std::lower_bound(bg.begin(), bg.end(), w), w);
        }
    }
    return out;
}

bool solve_m_cycle(const EmbeddedGraph& g, const std::vector<int>& B, const Matching& m, const NiceTreeDecomposition& td) {
    for (auto [u, v] : m) {
        if (u == v) throw Error("InvalidInput", "pair with equal endpoints");
        if (std::find(B.begin(), B.end(), u) == B.end() || std::find(B.begin(), B.end(), v) == B.end())
            throw Error("InvalidInput", "pair not drawn from B");
    }
    if (m.empty()) return true;
    checked(g, td);
    SubdividedInstance s = subdivide(g, m);
    NiceTreeDecomposition ext = make_nice(extend_for_subdivision(td.plain(), s));
    return solve_t_cycle(s.graph, s.subdivision_vertices, ext).has_value();
}

bool solve_m_cycle(const EmbeddedGraph& g, const std::vector<int>& B, const Matching& m) {
    if (m.empty()) return true;
    return solve_m_cycle(g, B, m, nice_decomposition(g));
}

}  // namespace tcycle
