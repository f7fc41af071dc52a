#include "tcycle/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <json.hpp>

#include "tcycle/oracle.hpp"

namespace tcycle {

ConcentricSequence check_concentric(const EmbeddedGraph& g, const std::vector<std::vector<int>>& cycles) {
    if (cycles.empty()) throw Error("InvalidInput", "no cycles given");
    ConcentricSequence s = make_sequence(g, cycles);
    std::vector<int> owner(g.vertex_capacity(), -1);
    for (int i = 0; i <= s.depth(); ++i)
        for (int v : s.cycles[i].vertices) {
            if (owner[v] >= 0)
                throw Error("NotDisjoint", "cycles " + std::to_string(owner[v]) + " and " + std::to_string(i) + " share vertex " + std::to_string(v));
            owner[v] = i;
        }
    for (int i = 1; i <= s.depth(); ++i)
        for (int v : s.cycles[i - 1].vertices)
            if (!s.vertex_in_open(g, i, v))
                throw Error("NotNested", "cycle " + std::to_string(i - 1) + " is not inside cycle " + std::to_string(i));
    return s;
}

bool check_tight(const EmbeddedGraph& g, const ConcentricSequence& seq) {
    // D_0 internally chordless
    {
        std::vector<int> par(g.vertex_capacity());
        std::iota(par.begin(), par.end(), 0);
        auto find = [&](int x) {
            while (par[x] != x) x = par[x] = par[par[x]];
            return x;
        };
        for (int e : g.edge_ids())
            if (seq.edge_in_open(g, 0, e)) par[find(g.edge(e).u)] = find(g.edge(e).v);
        std::map<int, std::set<int>> touch;
        for (int v : seq.cycles[0].vertices) {
            bool inner_edge = false;
            for (int e : g.rotation(v))
                if (seq.edge_in_open(g, 0, e)) inner_edge = true;
            if (inner_edge) touch[find(v)].insert(v);
        }
        for (auto& [r, s] : touch)
            if (s.size() >= 2) return false;
    }
    // no other cycle around D_i inside D_{i+1}
    const FaceSet& fs = seq.fs;
    int inner_face = -1;
    for (int i = 0; i < seq.depth(); ++i) {
        for (int f = 0; f < (int)fs.faces.size(); ++f)
            if (seq.inside[i][f]) {
                inner_face = f;
                break;
            }
        std::vector<char> keep_v(g.vertex_capacity(), 0);
        for (int v : g.vertices()) keep_v[v] = seq.vertex_in_disk(g, i + 1, v) && !seq.vertex_in_disk(g, i, v);
        std::vector<char> in_h(g.edge_capacity(), 0);
        for (int e : g.edge_ids())
            in_h[e] = seq.edge_in_disk(g, i + 1, e) && keep_v[g.edge(e).u] && keep_v[g.edge(e).v];
        for (int e : seq.cycles[i + 1].edges) {
            in_h[e] = 0;
            auto reg = face_regions(g, fs, in_h, nullptr);
            in_h[e] = 1;
            if (reg[inner_face] != reg[seq.outer]) return false;
        }
    }
    return true;
}

bool is_isolated(const EmbeddedGraph& g, const std::vector<int>& T, int v, int l) {
    if (!g.has_vertex(v)) throw Error("UnknownVertex", std::to_string(v));
    RadialMap r = radial_bfs(g, v);
    for (int x : T) {
        if (x == v) return false;
        if (r.dist[x] >= 0 && r.dist[x] <= l) return false;
    }
    return true;
}

CLConfiguration make_configuration(const EmbeddedGraph& g, const std::vector<std::vector<int>>& cycles,
                                   const std::vector<int>& loop_edges, const std::vector<int>& T) {
    CLConfiguration q;
    q.g = &g;
    q.seq = check_concentric(g, cycles);
    if (!is_t_loop(g, T, loop_edges)) throw Error("InvalidConfiguration", "L is not a T-loop");
    q.loop = cycle_walk(g, loop_edges);
    q.T = T;
    for (int t : T)
        if (q.seq.vertex_in_disk(g, q.depth(), t)) throw Error("InvalidConfiguration", "terminal " + std::to_string(t) + " lies in D_r");
    return q;
}

bool Segment::has_zero_chord() const {
    auto it = chords.find(0);
    return it != chords.end() && !it->second.empty();
}

namespace {

// element 2i = vertex i of the path, 2i+1 = edge i
template <class Pred>
std::vector<Arc> runs(const std::vector<int>& vs, const std::vector<int>& es, Pred in) {
    std::vector<Arc> out;
    int n = (int)(vs.size() + es.size());
    Arc cur;
    bool open = false;
    for (int x = 0; x < n; ++x) {
        bool isv = x % 2 == 0;
        int id = isv ? vs[x / 2] : es[x / 2];
        if (in(isv, id)) {
            cur.push(isv, id);
            open = true;
        } else if (open) {
            out.push_back(std::move(cur));
            cur = Arc{};
            open = false;
        }
    }
    if (open) out.push_back(std::move(cur));
    return out;
}

}  // namespace

std::vector<Segment> extract_segments(const CLConfiguration& q, int j) {
    const EmbeddedGraph& g = *q.g;
    const auto& L = q.loop;
    int n = (int)L.vertices.size();
    auto in_v = [&](int i) { return q.seq.vertex_in_disk(g, j, L.vertices[i]); };
    auto in_e = [&](int i) { return q.seq.edge_in_disk(g, j, L.edges[i]); };
    // start right after an element outside D_j
    int start = -1;
    for (int i = 0; i < n && start < 0; ++i) {
        if (!in_v(i)) start = 2 * i;
        else if (!in_e(i)) start = 2 * i + 1;
    }
    if (start < 0) throw Error("InvalidConfiguration", "loop lies inside D_" + std::to_string(j));
    std::vector<Segment> out;
    Segment cur;
    bool open = false;
    for (int s = 1; s <= 2 * n; ++s) {
        int x = (start + s) % (2 * n);
        bool isv = x % 2 == 0;
        int i = x / 2;
        bool in = isv ? in_v(i) : in_e(i);
        if (in) {
            if (isv)
                cur.vertices.push_back(L.vertices[i]);
            else
                cur.edges.push_back(L.edges[i]);
            open = true;
        } else if (open) {
            out.push_back(std::move(cur));
            cur = Segment{};
            open = false;
        }
    }
    if (open) out.push_back(std::move(cur));
    for (int id = 0; id < (int)out.size(); ++id) {
        Segment& s = out[id];
        s.id = id;
        s.u = s.vertices.front();
        s.v = s.vertices.back();
        s.eccentricity = j;
        for (int i = 0; i <= j; ++i)
            for (int x : s.vertices)
                if (q.seq.on_cycle_v[i][x]) s.eccentricity = std::min(s.eccentricity, i);
        for (int i = 0; i <= j; ++i) {
            s.chords[i] = runs(s.vertices, s.edges, [&](bool isv, int id2) {
                return isv ? q.seq.vertex_in_open(g, i, id2) : q.seq.edge_in_open(g, i, id2);
            });
            if (i == 0) continue;
            auto& sc = s.semichords[i];
            for (const Arc& X : s.chords[i]) {
                std::vector<Arc> parts;
                Arc c;
                for (auto [isv, id2] : X.elems) {
                    bool outside = isv ? !q.seq.vertex_in_disk(g, i - 1, id2) : !q.seq.edge_in_disk(g, i - 1, id2);
                    if (outside) {
                        c.push(isv, id2);
                    } else if (!c.elems.empty()) {
                        parts.push_back(std::move(c));
                        c = Arc{};
                    }
                }
                if (!c.elems.empty()) parts.push_back(std::move(c));
                sc.push_back(std::move(parts));
            }
        }
    }
    return out;
}

std::vector<char> segment_zone(const CLConfiguration& q, int j, const Segment& s) {
    const EmbeddedGraph& g = *q.g;
    const FaceSet& fs = q.seq.fs;
    int nf = (int)fs.faces.size();
    std::vector<char> zone(nf, 0);
    if (s.has_zero_chord()) return zone;
    std::vector<char> on_s(g.edge_capacity(), 0);
    for (int e : s.edges) on_s[e] = 1;
    std::vector<int> par(nf);
    std::iota(par.begin(), par.end(), 0);
    auto find = [&](int x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
    };
    const auto& in = q.seq.inside[j];
    for (int e : g.edge_ids()) {
        if (on_s[e]) continue;
        int a = fs.dart_face[2 * e], b = fs.dart_face[2 * e + 1];
        if (in[a] && in[b]) par[find(a)] = find(b);
    }
    std::vector<char> core(nf, 0);
    for (int f = 0; f < nf; ++f)
        if (q.seq.inside[0][f]) core[find(f)] = 1;
    for (int f = 0; f < nf; ++f)
        if (in[f] && !core[find(f)]) zone[f] = 1;
    return zone;
}

bool lies_in_zone(const CLConfiguration& q, int j, const std::vector<char>& zone, const Segment& inner, const Segment& outer) {
    const EmbeddedGraph& g = *q.g;
    const FaceSet& fs = q.seq.fs;
    const auto& in = q.seq.inside[j];
    std::set<int> ov(outer.vertices.begin(), outer.vertices.end()), oe(outer.edges.begin(), outer.edges.end());
    for (int x : inner.vertices) {
        if (ov.count(x)) return false;
        bool ok = false;
        for (int f : fs.vertex_faces[x])
            if (in[f] && zone[f]) ok = true;
        if (!ok) return false;
    }
    for (int e : inner.edges) {
        if (oe.count(e)) return false;
        int a = fs.dart_face[2 * e], b = fs.dart_face[2 * e + 1];
        if (!((in[a] && zone[a]) || (in[b] && zone[b]))) return false;
    }
    (void)g;
    return true;
}

int parallel_check(const CLConfiguration& q, int j, const std::vector<Segment>& segs, int a, int b) {
    const EmbeddedGraph& g = *q.g;
    const CycleWalk& C = q.seq.cycles[j];
    int m = (int)C.vertices.size();
    std::vector<int> pos(g.vertex_capacity(), -1);
    for (int i = 0; i < m; ++i) pos[C.vertices[i]] = i;
    const Segment& S1 = segs[a];
    const Segment& S2 = segs[b];
    for (int x : {S1.u, S1.v, S2.u, S2.v})
        if (pos[x] < 0) return 1;
    // arc from x to y along C_j; dir +1 follows the walk
    auto arc = [&](int x, int y, int dir, std::vector<int>& vs, std::vector<int>& es) {
        int i = pos[x];
        vs = {x};
        es.clear();
        while (C.vertices[i] != y) {
            int ni = (i + dir + m) % m;
            es.push_back(dir > 0 ? C.edges[i] : C.edges[ni]);
            i = ni;
            vs.push_back(C.vertices[i]);
        }
    };
    int best = 1;
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> pairings = {{{S1.u, S2.u}, {S1.v, S2.v}}, {{S1.u, S2.v}, {S1.v, S2.u}}};
    for (auto [p1, p2] : pairings) {
        for (int d1 : {1, -1})
            for (int d2 : {1, -1}) {
                if (p1.first == p1.second && d1 < 0) continue;
                if (p2.first == p2.second && d2 < 0) continue;
                std::vector<int> pv, pe, qv, qe;
                arc(p1.first, p1.second, d1, pv, pe);
                arc(p2.first, p2.second, d2, qv, qe);
                // condition 1: no other endpoint on the paths, and the union is a cycle
                std::set<int> P(pv.begin(), pv.end()), Pp(qv.begin(), qv.end());
                auto other_ok = [&](const std::set<int>& path, std::pair<int, int> ends) {
                    for (int x : {S1.u, S1.v, S2.u, S2.v})
                        if (x != ends.first && x != ends.second && path.count(x)) return false;
                    return true;
                };
                if (!other_ok(P, p1) || !other_ok(Pp, p2)) continue;
                std::vector<int> edges = pe;
                edges.insert(edges.end(), qe.begin(), qe.end());
                edges.insert(edges.end(), S1.edges.begin(), S1.edges.end());
                edges.insert(edges.end(), S2.edges.begin(), S2.edges.end());
                std::set<int> eset(edges.begin(), edges.end());
                if (eset.size() != edges.size() || edges.size() < 2) continue;
                CycleWalk w;
                try {
                    w = cycle_walk(g, edges);
                } catch (const Error&) {
                    continue;
                }
                if (std::set<int>(w.vertices.begin(), w.vertices.end()).size() != w.vertices.size()) continue;
                best = std::max(best, 2);
                bool trapped = false;
                for (int c = 0; c < (int)segs.size() && !trapped; ++c) {
                    if (c == a || c == b) continue;
                    if ((P.count(segs[c].u) && P.count(segs[c].v)) || (Pp.count(segs[c].u) && Pp.count(segs[c].v))) trapped = true;
                }
                if (trapped) continue;
                best = std::max(best, 3);
                auto in = inside_faces(g, q.seq.fs, w.edges, q.seq.outer);
                bool holds_core = false;
                for (int f = 0; f < (int)in.size(); ++f)
                    if (q.seq.inside[0][f] && in[f]) holds_core = true;
                if (holds_core) continue;
                return 0;
            }
    }
    return best;
}

TypePartition type_partition(const CLConfiguration& q, int j, const std::vector<Segment>& segs) {
    TypePartition tp;
    int n = (int)segs.size();
    tp.parallel.assign(n, std::vector<char>(n, 0));
    std::vector<int> live;
    for (int i = 0; i < n; ++i) {
        if (segs[i].has_zero_chord())
            tp.excluded.push_back(i);
        else
            live.push_back(i);
    }
    for (int i : live) tp.parallel[i][i] = 1;
    for (size_t x = 0; x < live.size(); ++x)
        for (size_t y = x + 1; y < live.size(); ++y) {
            bool p = parallel_check(q, j, segs, live[x], live[y]) == 0;
            tp.parallel[live[x]][live[y]] = tp.parallel[live[y]][live[x]] = p;
        }
    std::vector<int> par(n);
    std::iota(par.begin(), par.end(), 0);
    auto find = [&](int x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
    };
    for (int a : live)
        for (int b : live)
            if (tp.parallel[a][b]) par[find(a)] = find(b);
    for (int a : live)
        for (int b : live)
            for (int c : live)
                if (tp.parallel[a][b] && tp.parallel[b][c] && !tp.parallel[a][c]) tp.transitive = false;
    std::map<int, std::vector<int>> cls;
    for (int a : live) cls[find(a)].push_back(a);
    // outermost first: fewer ancestors in the class
    std::vector<std::vector<char>> zone(n);
    for (auto& [r, members] : cls) {
        std::map<int, int> anc;
        for (int a : members) {
            if (zone[a].empty()) zone[a] = segment_zone(q, j, segs[a]);
            anc[a] = 0;
        }
        for (int a : members)
            for (int b : members)
                if (a != b && lies_in_zone(q, j, zone[b], segs[a], segs[b])) ++anc[a];
        std::stable_sort(members.begin(), members.end(), [&](int x, int y) { return anc[x] < anc[y]; });
        tp.classes.push_back(members);
    }
    std::sort(tp.classes.begin(), tp.classes.end());
    return tp;
}

TypePartition type_partition(const CLConfiguration& q, int j) { return type_partition(q, j, extract_segments(q, j)); }

std::vector<ConvexVerdict> check_convex(const CLConfiguration& q) {
    int r = q.depth();
    auto segs = extract_segments(q, r);
    std::vector<std::vector<char>> zones(segs.size());
    for (size_t i = 0; i < segs.size(); ++i) zones[i] = segment_zone(q, r, segs[i]);
    std::vector<ConvexVerdict> out(segs.size());
    for (size_t s = 0; s < segs.size(); ++s) {
        const Segment& P = segs[s];
        ConvexVerdict& cv = out[s];
        cv.no_zero_chord = !P.has_zero_chord();
        for (int i = 1; i <= r; ++i) {
            const auto& ch = P.chords.at(i);
            if (ch.size() > 1) cv.one_chord = false;
            if (!ch.empty()) {
                bool touch = false;
                for (int x : P.vertices)
                    if (q.seq.on_cycle_v[i - 1][x]) touch = true;
                if (!touch) cv.touches_previous = false;
                for (const auto& parts : P.semichords.at(i))
                    if (parts.size() != 2) cv.two_semichords = false;
            }
        }
        if (P.eccentricity < r && cv.no_zero_chord) {
            bool found = false;
            for (size_t t = 0; t < segs.size() && !found; ++t)
                if (t != s && segs[t].eccentricity == P.eccentricity + 1 && lies_in_zone(q, r, zones[s], segs[t], P)) found = true;
            cv.deeper_child = found;
        } else if (P.eccentricity < r) {
            cv.deeper_child = false;
        }
    }
    return out;
}

bool is_convex(const CLConfiguration& q) {
    for (const auto& v : check_convex(q))
        if (!v.convex()) return false;
    return true;
}

SegmentForest build_segment_forest(const CLConfiguration& q, int j, const std::vector<Segment>& segs) {
    int n = (int)segs.size();
    SegmentForest f;
    f.level = j;
    f.precedes.assign(n, std::vector<char>(n, 0));
    for (int b = 0; b < n; ++b) {
        if (segs[b].has_zero_chord()) continue;
        auto zone = segment_zone(q, j, segs[b]);
        for (int a = 0; a < n; ++a)
            if (a != b && lies_in_zone(q, j, zone, segs[a], segs[b])) f.precedes[a][b] = 1;
    }
    f.parent.assign(n, -1);
    f.children.assign(n, {});
    for (int a = 0; a < n; ++a) {
        int best = -1, best_anc = -1;
        for (int b = 0; b < n; ++b) {
            if (!f.precedes[a][b]) continue;
            // nearest: no other ancestor of a sits inside b's zone
            bool nearest = true;
            for (int c = 0; c < n; ++c)
                if (c != b && f.precedes[a][c] && f.precedes[c][b]) nearest = false;
            int anc = 0;
            for (int c = 0; c < n; ++c) anc += f.precedes[b][c];
            if (nearest && (best < 0 || anc > best_anc)) {
                best = b;
                best_anc = anc;
            }
        }
        f.parent[a] = best;
        if (best >= 0) f.children[best].push_back(a);
    }
    f.height.assign(n, -1);
    f.subtree.assign(n, 0);
    std::function<void(int)> dfs = [&](int x) {
        int h = 0, sz = 1;
        for (int c : f.children[x]) {
            if (f.height[c] < 0) dfs(c);
            h = std::max(h, f.height[c] + 1);
            sz += f.subtree[c];
        }
        f.height[x] = h;
        f.subtree[x] = sz;
    };
    for (int a = 0; a < n; ++a)
        if (f.height[a] < 0) dfs(a);
    for (int a = 0; a < n; ++a) f.forest_height = std::max(f.forest_height, f.height[a]);
    return f;
}

SegmentForest build_segment_forest(const CLConfiguration& q, int j) { return build_segment_forest(q, j, extract_segments(q, j)); }

bool height_bound_holds(int h, int n) {
    if (n < 1) return false;
    return h <= 3.0 * std::log2((double)n) + 3.0 + 1e-9;
}

int config_cost(const CLConfiguration& q) { return loop_cost(q.loop.edges, q.seq); }

std::string config_report_json(const CLConfiguration& q) {
    using nlohmann::json;
    int r = q.depth();
    auto segs = extract_segments(q, r);
    auto conv = check_convex(q);
    auto tp = type_partition(q, r, segs);
    auto forest = build_segment_forest(q, r, segs);
    json j;
    j["depth"] = r;
    j["cost"] = config_cost(q);
    j["convex"] = is_convex(q);
    json js = json::array();
    for (size_t i = 0; i < segs.size(); ++i) {
        const Segment& s = segs[i];
        json x;
        x["id"] = s.id;
        x["vertices"] = s.vertices;
        x["edges"] = s.edges;
        x["endpoints"] = {s.u, s.v};
        x["eccentricity"] = s.eccentricity;
        json ch = json::object();
        for (auto& [lvl, arcs] : s.chords) ch[std::to_string(lvl)] = arcs.size();
        x["chords"] = ch;
        x["convex"] = conv[i].convex();
        x["parent"] = forest.parent[i];
        x["height"] = forest.height[i];
        x["subtree"] = forest.subtree[i];
        js.push_back(x);
    }
    j["segments"] = js;
    j["types"] = tp.classes;
    j["excluded"] = tp.excluded;
    j["forest_height"] = forest.forest_height;
    return j.dump(2);
}

}  // namespace tcycle
