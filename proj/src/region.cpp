#include "tcycle/region.hpp"

#include <algorithm>
#include <numeric>

namespace tcycle {

CycleWalk cycle_walk(const EmbeddedGraph& g, const std::vector<int>& edge_set) {
    if (edge_set.empty()) throw Error("NotACycle", "empty edge set");
    std::vector<std::vector<int>> inc(g.vertex_capacity());
    for (int e : edge_set) {
        if (!g.has_edge(e)) throw Error("NotACycle", "unknown edge " + std::to_string(e));
        const Edge& ed = g.edge(e);
        if (ed.u == ed.v) throw Error("NotACycle", "loop edge");
        inc[ed.u].push_back(e);
        inc[ed.v].push_back(e);
    }
    for (int e : edge_set)
        for (int x : {g.edge(e).u, g.edge(e).v})
            if (inc[x].size() != 2) throw Error("NotACycle", "vertex " + std::to_string(x) + " has cycle degree " + std::to_string(inc[x].size()));
    CycleWalk w;
    int start = g.edge(edge_set[0]).u;
    int cur = start, prev_e = -1;
    do {
        w.vertices.push_back(cur);
        int e = inc[cur][0] == prev_e ? inc[cur][1] : inc[cur][0];
        if (prev_e == -1) e = edge_set[0];
        w.edges.push_back(e);
        prev_e = e;
        cur = g.other(e, cur);
    } while (cur != start && w.edges.size() <= edge_set.size());
    if (w.edges.size() != edge_set.size()) throw Error("NotACycle", "edge set is not connected");
    return w;
}

std::vector<int> face_regions(const EmbeddedGraph& g, const FaceSet& fs, const std::vector<char>& cut_edge, int* count) {
    int nf = (int)fs.faces.size();
    std::vector<int> par(nf);
    std::iota(par.begin(), par.end(), 0);
    auto find = [&](int x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
    };
    for (int e : g.edge_ids()) {
        if (e < (int)cut_edge.size() && cut_edge[e]) continue;
        int a = find(fs.dart_face[2 * e]), b = find(fs.dart_face[2 * e + 1]);
        if (a != b) par[std::max(a, b)] = std::min(a, b);
    }
    std::vector<int> label(nf, -1), out(nf);
    int c = 0;
    for (int f = 0; f < nf; ++f) {
        int r = find(f);
        if (label[r] < 0) label[r] = c++;
        out[f] = label[r];
    }
    if (count) *count = c;
    return out;
}

std::vector<char> inside_faces(const EmbeddedGraph& g, const FaceSet& fs, const std::vector<int>& cycle_edges, int outer) {
    int nf = (int)fs.faces.size();
    std::vector<char> cut(g.edge_capacity(), 0);
    for (int e : cycle_edges) cut[e] = 1;
    auto comp = component_of(g, g.edge(cycle_edges.front()).u);
    std::vector<char> in_comp(g.vertex_capacity(), 0);
    for (int v : comp) in_comp[v] = 1;
    int oc = -1;
    if (outer >= 0 && in_comp[fs.faces[outer].vertices.front()]) oc = outer;
    if (oc < 0) {
        for (const Face& f : fs.faces)
            if (in_comp[f.vertices.front()] && (oc < 0 || f.darts.size() > fs.faces[oc].darts.size())) oc = f.id;
    }
    auto reg = face_regions(g, fs, cut, nullptr);
    std::vector<char> in(nf, 0);
    for (int f = 0; f < nf; ++f)
        if (in_comp[fs.faces[f].vertices.front()] && reg[f] != reg[oc]) in[f] = 1;
    return in;
}

bool ConcentricSequence::vertex_in_open(const EmbeddedGraph&, int i, int v) const {
    if (on_cycle_v[i][v]) return false;
    const auto& vf = fs.vertex_faces[v];
    return !vf.empty() && inside[i][vf.front()];
}

bool ConcentricSequence::vertex_in_disk(const EmbeddedGraph& g, int i, int v) const {
    return on_cycle_v[i][v] || vertex_in_open(g, i, v);
}

bool ConcentricSequence::edge_in_open(const EmbeddedGraph&, int i, int e) const {
    if (on_cycle_e[i][e]) return false;
    return inside[i][fs.dart_face[2 * e]] != 0;
}

bool ConcentricSequence::edge_in_disk(const EmbeddedGraph& g, int i, int e) const {
    return on_cycle_e[i][e] || edge_in_open(g, i, e);
}

bool ConcentricSequence::on_any_cycle(int e) const {
    for (const auto& oc : on_cycle_e)
        if (oc[e]) return true;
    return false;
}

ConcentricSequence make_sequence(const EmbeddedGraph& g, const std::vector<std::vector<int>>& cycle_edges) {
    ConcentricSequence s;
    s.fs = compute_faces(g);
    s.outer = outer_face(g, s.fs);
    for (const auto& ce : cycle_edges) {
        CycleWalk w = cycle_walk(g, ce);
        std::vector<char> ov(g.vertex_capacity(), 0), oe(g.edge_capacity(), 0);
        for (int v : w.vertices) ov[v] = 1;
        for (int e : w.edges) oe[e] = 1;
        s.inside.push_back(inside_faces(g, s.fs, w.edges, s.outer));
        s.on_cycle_v.push_back(std::move(ov));
        s.on_cycle_e.push_back(std::move(oe));
        s.cycles.push_back(std::move(w));
    }
    return s;
}

namespace {
struct CycleDfs {
    const EmbeddedGraph& g;
    const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& f;
    int s;
    bool restrict_above;
    std::vector<int> path, pedges;
    std::vector<char> in;
    bool stop = false;

    void run(int v) {
        for (int e : g.rotation(v)) {
            if (stop) return;
            int w = g.other(e, v);
            if (w == s) {
                if (path.size() >= 3 && path[1] < path.back()) {
                    pedges.push_back(e);
                    if (!f(path, pedges)) stop = true;
                    pedges.pop_back();
                }
                continue;
            }
            if (in[w] || (restrict_above && w < s)) continue;
            in[w] = 1;
            path.push_back(w);
            pedges.push_back(e);
            run(w);
            path.pop_back();
            pedges.pop_back();
            in[w] = 0;
        }
    }
};
}  // namespace

void enumerate_cycles(const EmbeddedGraph& g,
                      const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& f) {
    for (int s : g.vertices()) {
        CycleDfs d{g, f, s, true, {s}, {}, std::vector<char>(g.vertex_capacity(), 0)};
        d.in[s] = 1;
        d.run(s);
        if (d.stop) return;
    }
}

void enumerate_cycles_through(const EmbeddedGraph& g, int s,
                              const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& f) {
    CycleDfs d{g, f, s, false, {s}, {}, std::vector<char>(g.vertex_capacity(), 0)};
    d.in[s] = 1;
    d.run(s);
}

}  // namespace tcycle
