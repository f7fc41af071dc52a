#include "tcycle/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <json.hpp>

#include "tcycle/cycles.hpp"

namespace tcycle {

int g_of_k(int k, double c1, double c2) {
    if (k < 0) throw Error("BadParams", "negative k");
    return (int)std::ceil(c1 * std::log2((double)k + 1.0) - 1e-12) + (int)std::ceil(c2 - 1e-12);
}

IsolationBudget make_budget(int k, double c1, double c2) {
    IsolationBudget b;
    b.g = std::max(1, g_of_k(k, c1, c2));
    return b;
}

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<int> alive_only(const EmbeddedGraph& g, const std::vector<int>& vs) {
    std::vector<int> out;
    for (int v : vs)
        if (g.has_vertex(v)) out.push_back(v);
    return out;
}

}  // namespace

PuncturedInstance make_instance(EmbeddedGraph g, std::vector<std::vector<int>> holes) {
    PuncturedInstance p;
    p.graph = std::move(g);
    std::vector<int> all;
    for (auto& h : holes) {
        h = sorted_unique(h);
        for (int v : h)
            if (!p.graph.has_vertex(v)) throw Error("UnknownVertex", std::to_string(v));
        if (h.empty()) continue;
        all.insert(all.end(), h.begin(), h.end());
        p.holes.push_back(h);
    }
    p.boundary_vertices = sorted_unique(all);
    return p;
}

ProperCurve shortest_curve(const EmbeddedGraph& g, const FaceSet& fs, const std::vector<int>& from,
                           const std::vector<int>& to) {
    int nv = g.vertex_capacity();
    int nf = (int)fs.faces.size();
    std::vector<int> par(nv + nf, -2);
    std::vector<char> target(nv, 0);
    for (int v : to) target[v] = 1;
    std::vector<int> q;
    for (int v : from) {
        if (par[v] != -2) continue;
        par[v] = -1;
        q.push_back(v);
    }
    int hit = -1;
    for (int v : from)
        if (target[v]) hit = v;
    for (size_t i = 0; i < q.size() && hit < 0; ++i) {
        int x = q[i];
        if (x < nv) {
            for (int f : fs.vertex_faces[x])
                if (par[nv + f] == -2) {
                    par[nv + f] = x;
                    q.push_back(nv + f);
                }
        } else {
            for (int w : fs.faces[x - nv].vertices)
                if (par[w] == -2) {
                    par[w] = x;
                    q.push_back(w);
                    if (target[w]) {
                        hit = w;
                        break;
                    }
                }
        }
    }
    ProperCurve c;
    if (hit < 0) return c;
    std::vector<int> path;
    for (int x = hit; x != -1; x = par[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    for (int x : path) {
        if (x < nv)
            c.vertices.push_back(x);
        else
            c.faces.push_back(x - nv);
    }
    return c;
}

PuncturedInstance initial_punctures(const EmbeddedGraph& g, const std::vector<int>& T) {
    std::vector<std::vector<int>> holes;
    for (int t : sorted_unique(T)) {
        if (!g.has_vertex(t)) throw Error("UnknownVertex", std::to_string(t));
        if (g.degree(t) < 1) throw Error("InvalidInput", "terminal " + std::to_string(t) + " has degree 0");
        holes.push_back({t});
    }
    return make_instance(g, holes);
}

CutResult cut_reduction(const PuncturedInstance& inst, const IsolationBudget& b) {
    int c = inst.hole_count();
    if (c < 3) throw Error("HoleCountTooSmall", std::to_string(c) + " holes");
    const EmbeddedGraph& g = inst.graph;
    FaceSet fs = compute_faces(g);
    int best = -1, bi = -1, bj = -1;
    for (int i = 0; i < c; ++i) {
        auto d = radial_multi(g, fs, inst.holes[i]);
        for (int j = i + 1; j < c; ++j)
            for (int v : inst.holes[j])
                if (d[v] >= 0 && (best < 0 || d[v] < best)) {
                    best = d[v];
                    bi = i;
                    bj = j;
                }
    }
    if (best < 0) throw Error("NoConnectingCurve", "holes lie in different components");
    CutResult r;
    r.curve = shortest_curve(g, fs, inst.holes[bi], inst.holes[bj]);
    r.within_bound = (int)r.curve.vertices.size() <= 6 * b.g + 6;
    std::vector<std::vector<int>> holes;
    std::vector<int> merged = inst.holes[bi];
    merged.insert(merged.end(), inst.holes[bj].begin(), inst.holes[bj].end());
    merged.insert(merged.end(), r.curve.vertices.begin(), r.curve.vertices.end());
    holes.push_back(merged);
    for (int i = 0; i < c; ++i)
        if (i != bi && i != bj) holes.push_back(inst.holes[i]);
    r.children.push_back(make_instance(g, holes));
    return r;
}

std::vector<std::vector<int>> layer_partition(const PuncturedInstance& inst) {
    if (inst.hole_count() != 1) throw Error("WrongHoleCount", std::to_string(inst.hole_count()) + " holes");
    const EmbeddedGraph& g = inst.graph;
    auto d = radial_multi(g, compute_faces(g), inst.boundary_vertices);
    std::vector<std::vector<int>> layers;
    std::vector<int> far;
    for (int v : g.vertices()) {
        if (d[v] < 0) {
            far.push_back(v);
            continue;
        }
        if ((int)layers.size() <= d[v]) layers.resize(d[v] + 1);
        layers[d[v]].push_back(v);
    }
    if (!far.empty()) layers.push_back(far);
    return layers;
}

namespace {

// delete every vertex radially farther than g from `base`
EmbeddedGraph strip_far(const EmbeddedGraph& g, const std::vector<int>& base, int gk, std::vector<int>* removed) {
    auto d = radial_multi(g, compute_faces(g), base);
    std::vector<int> dead;
    for (int v : g.vertices())
        if (d[v] < 0 || d[v] > gk) dead.push_back(v);
    if (removed) *removed = dead;
    return remove_vertices(g, dead);
}

int dart_pos(const std::vector<int>& dl, int d) { return (int)(std::find(dl.begin(), dl.end(), d) - dl.begin()); }

// Radial distances from one side of A, never crossing A. Returned per vertex, -1 if unreachable.
struct SideSplit {
    std::vector<std::vector<int>> wedge;  // per side: faces next to A_side
    std::vector<std::vector<int>> half;   // per side: vertices on the side's half of an A face
};

SideSplit split_sides(const EmbeddedGraph& g, const FaceSet& fs, const ProperCurve& A) {
    SideSplit s;
    s.wedge.resize(2);
    s.half.resize(2);
    int m = (int)A.faces.size();
    std::vector<char> on_a_face(fs.faces.size(), 0);
    for (int f : A.faces) on_a_face[f] = 1;
    // corner darts: cF[i] at a_i, eF[i] at a_{i+1}, both in face F_i
    std::vector<int> cF(m), eF(m);
    for (int i = 0; i < m; ++i) {
        const auto& walk = fs.faces[A.faces[i]].darts;
        int L = (int)walk.size();
        int s0 = -1;
        for (int k = 0; k < L && s0 < 0; ++k)
            if (g.tail(walk[k]) == A.vertices[i]) s0 = k;
        int s1 = -1;
        for (int k = 1; k <= L && s1 < 0; ++k)
            if (g.tail(walk[(s0 + k) % L]) == A.vertices[i + 1]) s1 = (s0 + k) % L;
        cF[i] = walk[s0];
        eF[i] = walk[s1];
        // side 0 half: walk from cF to eF; side 1: from eF back to cF
        for (int k = (s0 + 1) % L; k != s1; k = (k + 1) % L) s.half[0].push_back(g.tail(walk[k]));
        for (int k = (s1 + 1) % L; k != s0; k = (k + 1) % L) s.half[1].push_back(g.tail(walk[k]));
        if (i == 0 || i == m - 1) {
            // near the holes both halves touch both sides
            for (int k = 0; k < L; ++k) {
                s.half[0].push_back(g.tail(walk[k]));
                s.half[1].push_back(g.tail(walk[k]));
            }
        }
    }
    for (int i = 1; i < m; ++i) {
        int x = A.vertices[i];
        auto dl = darts_at(g, x);
        int deg = (int)dl.size();
        int p1 = dart_pos(dl, eF[i - 1]), p2 = dart_pos(dl, cF[i]);
        for (int k = (p1 + 1) % deg; k != p2; k = (k + 1) % deg) s.wedge[0].push_back(fs.dart_face[dl[k]]);
        for (int k = (p2 + 1) % deg; k != p1; k = (k + 1) % deg) s.wedge[1].push_back(fs.dart_face[dl[k]]);
    }
    for (int end : {A.vertices.front(), A.vertices.back()})
        for (int f : fs.vertex_faces[end]) {
            s.wedge[0].push_back(f);
            s.wedge[1].push_back(f);
        }
    for (int side = 0; side < 2; ++side) {
        auto& w = s.wedge[side];
        w.erase(std::remove_if(w.begin(), w.end(), [&](int f) { return on_a_face[f]; }), w.end());
    }
    return s;
}

std::vector<int> side_distance(const EmbeddedGraph& g, const FaceSet& fs, const ProperCurve& A, const SideSplit& s,
                               int side) {
    int nv = g.vertex_capacity();
    int nf = (int)fs.faces.size();
    std::vector<char> on_a(nv, 0), on_a_face(nf, 0);
    for (int v : A.vertices) on_a[v] = 1;
    for (int f : A.faces) on_a_face[f] = 1;
    std::vector<int> dist(nv + nf, -1);
    std::vector<int> q;
    for (int v : A.vertices) dist[v] = 0;
    // wedge faces at 1, half vertices at 2
    for (int f : s.wedge[side])
        if (dist[nv + f] < 0) {
            dist[nv + f] = 1;
            q.push_back(nv + f);
        }
    size_t head = 0;
    auto expand = [&](int x) {
        if (x < nv) {
            for (int f : fs.vertex_faces[x])
                if (!on_a_face[f] && dist[nv + f] < 0) {
                    dist[nv + f] = dist[x] + 1;
                    q.push_back(nv + f);
                }
        } else {
            for (int w : fs.faces[x - nv].vertices)
                if (!on_a[w] && dist[w] < 0) {
                    dist[w] = dist[x] + 1;
                    q.push_back(w);
                }
        }
    };
    // face nodes at distance 1 first
    size_t n1 = q.size();
    for (; head < n1; ++head) expand(q[head]);
    for (int v : s.half[side])
        if (!on_a[v] && dist[v] < 0) {
            dist[v] = 2;
            q.push_back(v);
        }
    for (; head < q.size(); ++head) expand(q[head]);
    std::vector<int> out(nv, -1);
    for (int v = 0; v < nv; ++v)
        if (dist[v] >= 0) out[v] = dist[v] / 2;
    return out;
}

}  // namespace

EmbeddedGraph remove_one_punctured(const PuncturedInstance& inst, const IsolationBudget& b) {
    if (inst.hole_count() != 1) throw Error("WrongHoleCount", std::to_string(inst.hole_count()) + " holes");
    return strip_far(inst.graph, inst.boundary_vertices, b.g, nullptr);
}

EmbeddedGraph remove_two_punctured(const PuncturedInstance& inst, const IsolationBudget& b, TwoPuncturedTrace* trace) {
    if (inst.hole_count() != 2) throw Error("WrongHoleCount", std::to_string(inst.hole_count()) + " holes");
    const EmbeddedGraph& g = inst.graph;
    FaceSet fs = compute_faces(g);
    TwoPuncturedTrace tr;
    tr.A = shortest_curve(g, fs, inst.holes[0], inst.holes[1]);
    if (tr.A.vertices.empty()) throw Error("NoConnectingCurve", "holes lie in different components");
    std::vector<int> base = inst.boundary_vertices;
    base.insert(base.end(), tr.A.vertices.begin(), tr.A.vertices.end());
    if ((int)tr.A.vertices.size() <= 6 * b.g) {
        tr.short_case = true;
    } else {
        SideSplit s = split_sides(g, fs, tr.A);
        auto d1 = side_distance(g, fs, tr.A, s, 0);
        auto d2 = side_distance(g, fs, tr.A, s, 1);
        std::vector<char> on_a(g.vertex_capacity(), 0);
        for (int v : tr.A.vertices) on_a[v] = 1;
        for (int v : g.vertices())
            if (!on_a[v] && d1[v] >= 0 && d2[v] >= 0 && std::abs(d1[v] - d2[v]) <= 1) tr.region.push_back(v);
        // B runs inside R, away from A's faces, from hole to hole
        std::vector<char> keep(g.vertex_capacity(), 0);
        for (int v : tr.region) keep[v] = 1;
        for (int v : inst.boundary_vertices) keep[v] = 1;
        int nv = g.vertex_capacity();
        int nf = (int)fs.faces.size();
        std::vector<char> bad_face(nf, 0);
        for (int f : tr.A.faces) bad_face[f] = 1;
        std::vector<int> par(nv + nf, -2), q;
        std::vector<char> target(nv, 0);
        for (int v : inst.holes[1]) target[v] = 1;
        for (int v : inst.holes[0]) {
            par[v] = -1;
            q.push_back(v);
        }
        int hit = -1;
        for (size_t i = 0; i < q.size() && hit < 0; ++i) {
            int x = q[i];
            if (x < nv) {
                for (int f : fs.vertex_faces[x])
                    if (!bad_face[f] && par[nv + f] == -2) {
                        par[nv + f] = x;
                        q.push_back(nv + f);
                    }
            } else {
                for (int w : fs.faces[x - nv].vertices)
                    if (keep[w] && par[w] == -2) {
                        par[w] = x;
                        if (target[w]) {
                            hit = w;
                            break;
                        }
                        q.push_back(w);
                    }
            }
        }
        if (hit >= 0) {
            std::vector<int> path;
            for (int x = hit; x != -1; x = par[x]) path.push_back(x);
            std::reverse(path.begin(), path.end());
            for (int x : path) (x < nv ? tr.B.vertices : tr.B.faces).push_back(x < nv ? x : x - nv);
            base.insert(base.end(), tr.B.vertices.begin(), tr.B.vertices.end());
        }
    }
    EmbeddedGraph out = strip_far(g, sorted_unique(base), b.g, &tr.removed);
    if (trace) *trace = std::move(tr);
    return out;
}

std::vector<char> isolation_batch_serial(const EmbeddedGraph& g, const std::vector<int>& T,
                                         const std::vector<int>& vs, int l) {
    FaceSet fs = compute_faces(g);
    std::vector<char> out(vs.size(), 0);
    for (size_t i = 0; i < vs.size(); ++i) {
        int v = vs[i];
        if (std::find(T.begin(), T.end(), v) != T.end()) continue;
        auto r = radial_bfs(g, fs, v);
        bool iso = true;
        for (int t : T)
            if (r.dist[t] >= 0 && r.dist[t] <= l) iso = false;
        out[i] = iso;
    }
    return out;
}

std::vector<char> isolation_batch_parallel(const EmbeddedGraph& g, const std::vector<int>& T,
                                           const std::vector<int>& vs, int l) {
    FaceSet fs = compute_faces(g);
    std::vector<char> out(vs.size(), 0);
    int n = (int)vs.size();
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        int v = vs[i];
        if (std::find(T.begin(), T.end(), v) != T.end()) continue;
        auto r = radial_bfs(g, fs, v);
        bool iso = true;
        for (int t : T)
            if (r.dist[t] >= 0 && r.dist[t] <= l) iso = false;
        out[i] = iso;
    }
    return out;
}

ReedResult reed_pipeline(const EmbeddedGraph& g0, const std::vector<int>& T0, const IsolationBudget& b, bool parallel) {
    if (T0.empty()) throw Error("InvalidInput", "reed_pipeline needs terminals");
    std::vector<int> T = sorted_unique(T0);
    for (int t : T)
        if (!g0.has_vertex(t)) throw Error("UnknownVertex", std::to_string(t));
    ReedResult res;
    RemovalReport& rep = res.report;
    rep.g = b.g;
    auto note = [&](const std::vector<int>& dead, const char* why, int thr) {
        for (int v : dead) rep.removed.push_back({v, why, thr});
    };
    auto comp = component_of(g0, T[0]);
    for (int t : T)
        if (!std::binary_search(comp.begin(), comp.end(), t)) rep.terminals_disconnected = true;
    if (rep.terminals_disconnected) {
        res.graph = g0;
        res.U = T;
        res.report.U = T;
        return res;
    }
    std::vector<int> outside;
    for (int v : g0.vertices())
        if (!std::binary_search(comp.begin(), comp.end(), v)) outside.push_back(v);
    note(outside, "component", -1);
    EmbeddedGraph g = remove_vertices(g0, outside);

    if (g.num_edges() == 0) {
        // a lone terminal
        res.graph = g;
        res.U = T;
        rep.U = T;
        rep.pieces.push_back(make_instance(g, {T}));
        return res;
    }

    // Step 1
    PuncturedInstance inst = initial_punctures(g, T);
    while (inst.hole_count() >= 3) {
        CutResult cr = cut_reduction(inst, b);
        rep.cut_sizes.push_back((int)cr.curve.vertices.size());
        if (!cr.within_bound) ++rep.cuts_over_bound;
        inst = std::move(cr.children[0]);
    }

    // Step 2
    const auto& bv = inst.boundary_vertices;
    auto iso = parallel ? isolation_batch_parallel(g, T, bv, b.g) : isolation_batch_serial(g, T, bv, b.g);
    std::vector<int> dead;
    for (size_t i = 0; i < bv.size(); ++i)
        if (iso[i]) dead.push_back(bv[i]);
    note(dead, "boundary", b.g);
    if (!dead.empty()) {
        g = remove_vertices(g, dead);
        std::vector<std::vector<int>> holes;
        for (const auto& h : inst.holes) holes.push_back(alive_only(g, h));
        inst = make_instance(g, holes);
    }

    // Steps 3-4
    std::vector<int> extra;
    std::vector<int> before = g.vertices();
    EmbeddedGraph out;
    const char* why = "one-punctured";
    if (inst.hole_count() == 1) {
        out = remove_one_punctured(inst, b);
    } else {
        try {
            TwoPuncturedTrace tr;
            out = remove_two_punctured(inst, b, &tr);
            why = "two-punctured";
            rep.two_punctured_short = tr.short_case;
            extra = tr.A.vertices;
            extra.insert(extra.end(), tr.B.vertices.begin(), tr.B.vertices.end());
        } catch (const Error& e) {
            if (e.kind() != "NoConnectingCurve") throw;
            out = strip_far(g, inst.boundary_vertices, b.g, nullptr);
        }
    }
    std::vector<int> gone;
    for (int v : before)
        if (!out.has_vertex(v)) gone.push_back(v);
    note(gone, why, b.g);

    std::vector<int> U = inst.boundary_vertices;
    U.insert(U.end(), extra.begin(), extra.end());
    res.U = sorted_unique(alive_only(out, U));
    std::vector<std::vector<int>> holes;
    for (const auto& h : inst.holes) holes.push_back(alive_only(out, h));
    rep.pieces.push_back(make_instance(out, holes));
    rep.U = res.U;
    res.graph = std::move(out);
    return res;
}

EmbeddedGraph quadratic_remover(const EmbeddedGraph& g0, const std::vector<int>& T, const IsolationBudget& b,
                                std::vector<Removal>* removed) {
    EmbeddedGraph g = g0;
    std::vector<int> src;
    for (int t : sorted_unique(T))
        if (g.has_vertex(t)) src.push_back(t);
    for (;;) {
        std::vector<int> d(g.vertex_capacity(), -1);
        if (!src.empty()) d = radial_multi(g, compute_faces(g), src);
        int pick = -1, far = -1;
        for (int v : g.vertices()) {
            int dv = d[v] < 0 ? std::numeric_limits<int>::max() : d[v];
            if (dv > b.g && dv > far) {
                far = dv;
                pick = v;
            }
        }
        if (pick < 0) break;
        if (removed) removed->push_back({pick, "isolated", b.g});
        g = remove_vertices(g, {pick});
    }
    return g;
}

std::string removal_report_json(const RemovalReport& r) {
    using nlohmann::json;
    json j;
    j["g"] = r.g;
    json rem = json::array();
    for (const auto& x : r.removed) rem.push_back({{"vertex", x.vertex}, {"reason", x.reason}, {"threshold", x.threshold}});
    j["removed"] = rem;
    j["U"] = r.U;
    j["cut_sizes"] = r.cut_sizes;
    j["cuts_over_bound"] = r.cuts_over_bound;
    j["terminals_disconnected"] = r.terminals_disconnected;
    j["two_punctured_short"] = r.two_punctured_short;
    json pieces = json::array();
    for (const auto& p : r.pieces) pieces.push_back({{"holes", p.holes}, {"vertices", p.graph.num_vertices()}});
    j["pieces"] = pieces;
    return j.dump(2);
}

}  // namespace tcycle
