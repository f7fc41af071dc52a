#include "tcycle/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tcycle {

int EmbeddedGraph::add_vertex() {
    alive_.push_back(1);
    term_.push_back(0);
    rot_.emplace_back();
    ++nv_;
    return (int)alive_.size() - 1;
}

void EmbeddedGraph::ensure_vertex(int id) {
    if (id < 0) throw Error("UnknownVertex", "negative id");
    if (id >= (int)alive_.size()) {
        alive_.resize(id + 1, 0);
        term_.resize(id + 1, 0);
        rot_.resize(id + 1);
    }
    if (!alive_[id]) {
        alive_[id] = 1;
        ++nv_;
    }
}

int EmbeddedGraph::add_edge(int u, int v) {
    int e = (int)edges_.size();
    put_edge(e, u, v);
    rot_[u].push_back(e);
    rot_[v].push_back(e);
    return e;
}

void EmbeddedGraph::put_edge(int eid, int u, int v) {
    if (!has_vertex(u) || !has_vertex(v)) throw Error("UnknownVertex", "edge endpoint missing");
    if (eid >= (int)edges_.size()) edges_.resize(eid + 1);
    if (!edges_[eid].alive) ++ne_;
    edges_[eid] = Edge{u, v, true};
}

void EmbeddedGraph::remove_edge(int e) {
    if (!has_edge(e)) return;
    auto drop = [&](int x) {
        auto& r = rot_[x];
        r.erase(std::remove(r.begin(), r.end(), e), r.end());
    };
    drop(edges_[e].u);
    drop(edges_[e].v);
    edges_[e].alive = false;
    --ne_;
}

void EmbeddedGraph::remove_vertex(int v) {
    if (!has_vertex(v)) return;
    std::vector<int> inc = rot_[v];
    for (int e : inc) remove_edge(e);
    alive_[v] = 0;
    term_[v] = 0;
    rot_[v].clear();
    --nv_;
}

void EmbeddedGraph::contract_edge(int e, int keep) {
    if (!has_edge(e)) throw Error("UnknownEdge", std::to_string(e));
    Edge ed = edges_[e];
    if (ed.u == ed.v) throw Error("InvalidInput", "cannot contract a loop");
    if (keep != ed.u && keep != ed.v) throw Error("InvalidInput", "keep is not an endpoint");
    int gone = ed.u == keep ? ed.v : ed.u;
    if (outer_dart >= 0 && (outer_dart >> 1) == e) {
        int nd = next_dart(*this, outer_dart);
        outer_dart = (nd >> 1) == e ? -1 : nd;
    }
    const auto& ru = rot_[keep];
    const auto& rv = rot_[gone];
    int pk = (int)(std::find(ru.begin(), ru.end(), e) - ru.begin());
    int pg = (int)(std::find(rv.begin(), rv.end(), e) - rv.begin());
    std::vector<int> merged(ru.begin(), ru.begin() + pk);
    for (int i = 1; i < (int)rv.size(); ++i) merged.push_back(rv[(pg + i) % rv.size()]);
    merged.insert(merged.end(), ru.begin() + pk + 1, ru.end());
    for (int f : rv) {
        if (f == e) continue;
        if (edges_[f].u == gone) edges_[f].u = keep;
        if (edges_[f].v == gone) edges_[f].v = keep;
    }
    edges_[e].alive = false;
    --ne_;
    rot_[keep] = std::move(merged);
    rot_[gone].clear();
    alive_[gone] = 0;
    term_[gone] = 0;
    --nv_;
}

std::vector<int> EmbeddedGraph::vertices() const {
    std::vector<int> out;
    out.reserve(nv_);
    for (int i = 0; i < (int)alive_.size(); ++i)
        if (alive_[i]) out.push_back(i);
    return out;
}

std::vector<int> EmbeddedGraph::edge_ids() const {
    std::vector<int> out;
    out.reserve(ne_);
    for (int i = 0; i < (int)edges_.size(); ++i)
        if (edges_[i].alive) out.push_back(i);
    return out;
}

std::vector<int> EmbeddedGraph::neighbors(int v) const {
    std::vector<int> out;
    for (int e : rot_[v]) out.push_back(other(e, v));
    return out;
}

int EmbeddedGraph::find_edge(int u, int v) const {
    for (int e : rot_[u])
        if (other(e, u) == v) return e;
    return -1;
}

std::vector<int> EmbeddedGraph::terminals() const {
    std::vector<int> out;
    for (int i = 0; i < (int)alive_.size(); ++i)
        if (alive_[i] && term_[i]) out.push_back(i);
    return out;
}

void EmbeddedGraph::clear_terminals() { std::fill(term_.begin(), term_.end(), 0); }

std::vector<int> darts_at(const EmbeddedGraph& g, int v) {
    std::vector<int> out;
    const auto& r = g.rotation(v);
    out.reserve(r.size());
    std::vector<int> seen_loop;
    for (int e : r) {
        const Edge& ed = g.edge(e);
        if (ed.u == ed.v) {
            bool second = std::find(seen_loop.begin(), seen_loop.end(), e) != seen_loop.end();
            out.push_back(2 * e + (second ? 1 : 0));
            if (!second) seen_loop.push_back(e);
        } else {
            out.push_back(ed.u == v ? 2 * e : 2 * e + 1);
        }
    }
    return out;
}

int next_dart(const EmbeddedGraph& g, int d) {
    int t = twin(d);
    int w = g.tail(t);
    auto dl = darts_at(g, w);
    int p = (int)(std::find(dl.begin(), dl.end(), t) - dl.begin());
    int deg = (int)dl.size();
    return dl[(p - 1 + deg) % deg];
}

FaceSet compute_faces(const EmbeddedGraph& g) {
    FaceSet fs;
    int nd = 2 * g.edge_capacity();
    fs.dart_face.assign(nd, -1);
    fs.vertex_faces.assign(g.vertex_capacity(), {});
    std::vector<int> pos(nd, -1);
    std::vector<std::vector<int>> dl(g.vertex_capacity());
    for (int v : g.vertices()) {
        dl[v] = darts_at(g, v);
        for (int i = 0; i < (int)dl[v].size(); ++i) pos[dl[v][i]] = i;
    }
    for (int d = 0; d < nd; ++d) {
        if (!g.has_edge(d >> 1) || fs.dart_face[d] != -1) continue;
        Face f;
        f.id = (int)fs.faces.size();
        int cur = d;
        int guard = 0;
        while (fs.dart_face[cur] == -1) {
            fs.dart_face[cur] = f.id;
            f.darts.push_back(cur);
            int t = twin(cur);
            int w = g.tail(t);
            int deg = (int)dl[w].size();
            if (pos[t] < 0 || deg == 0) throw Error("MalformedRotation", "dart missing from rotation");
            cur = dl[w][(pos[t] - 1 + deg) % deg];
            if (++guard > nd + 1) throw Error("MalformedRotation", "face walk does not close");
        }
        if (cur != d) throw Error("MalformedRotation", "face walk does not close");
        std::set<int> vs;
        for (int x : f.darts) vs.insert(g.tail(x));
        f.vertices.assign(vs.begin(), vs.end());
        fs.faces.push_back(std::move(f));
    }
    for (int v : g.vertices()) {
        if (g.degree(v) == 0) {
            Face f;
            f.id = (int)fs.faces.size();
            f.vertices = {v};
            fs.faces.push_back(std::move(f));
        }
    }
    for (const Face& f : fs.faces)
        for (int v : f.vertices) fs.vertex_faces[v].push_back(f.id);
    return fs;
}

FaceSet validate_embedding(const EmbeddedGraph& g) {
    std::vector<int> seen(g.edge_capacity(), 0);
    for (int v : g.vertices()) {
        for (int e : g.rotation(v)) {
            if (!g.has_edge(e)) throw Error("MalformedRotation", "vertex " + std::to_string(v) + " lists unknown edge " + std::to_string(e));
            const Edge& ed = g.edge(e);
            if (ed.u != v && ed.v != v)
                throw Error("MalformedRotation", "edge " + std::to_string(e) + " not incident to " + std::to_string(v));
            ++seen[e];
        }
    }
    for (int e : g.edge_ids()) {
        const Edge& ed = g.edge(e);
        if (!g.has_vertex(ed.u) || !g.has_vertex(ed.v)) throw Error("MalformedRotation", "edge " + std::to_string(e) + " has dead endpoint");
        if (seen[e] != 2) throw Error("MalformedRotation", "edge " + std::to_string(e) + " appears " + std::to_string(seen[e]) + " times in rotations");
        if (ed.u != ed.v) {
            auto cu = std::count(g.rotation(ed.u).begin(), g.rotation(ed.u).end(), e);
            if (cu != 1) throw Error("MalformedRotation", "edge " + std::to_string(e) + " duplicated at a vertex");
        }
    }
    FaceSet fs = compute_faces(g);
    auto comps = components(g);
    std::vector<int> comp_id(g.vertex_capacity(), -1);
    for (int c = 0; c < (int)comps.size(); ++c)
        for (int v : comps[c]) comp_id[v] = c;
    std::vector<long> V(comps.size(), 0), E(comps.size(), 0), F(comps.size(), 0);
    for (int c = 0; c < (int)comps.size(); ++c) V[c] = (long)comps[c].size();
    for (int e : g.edge_ids()) ++E[comp_id[g.edge(e).u]];
    for (const Face& f : fs.faces) ++F[comp_id[f.vertices.front()]];
    for (int c = 0; c < (int)comps.size(); ++c) {
        if (V[c] - E[c] + F[c] != 2)
            throw Error("NonPlanarCertificate", "Euler check fails on component of vertex " + std::to_string(comps[c].front()) + ": V-E+F=" + std::to_string(V[c] - E[c] + F[c]));
    }
    return fs;
}

int outer_face(const EmbeddedGraph& g, const FaceSet& fs) {
    if (fs.faces.empty()) return -1;
    if (g.outer_dart >= 0 && g.has_edge(g.outer_dart >> 1) && g.outer_dart < (int)fs.dart_face.size())
        return fs.dart_face[g.outer_dart];
    int best = 0;
    for (const Face& f : fs.faces)
        if (f.darts.size() > fs.faces[best].darts.size()) best = f.id;
    return best;
}

std::vector<std::vector<int>> components(const EmbeddedGraph& g) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(g.vertex_capacity(), 0);
    for (int s : g.vertices()) {
        if (seen[s]) continue;
        std::vector<int> comp{s};
        seen[s] = 1;
        for (size_t i = 0; i < comp.size(); ++i)
            for (int w : g.neighbors(comp[i]))
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<int> component_of(const EmbeddedGraph& g, int v) {
    std::vector<char> seen(g.vertex_capacity(), 0);
    std::vector<int> comp{v};
    seen[v] = 1;
    for (size_t i = 0; i < comp.size(); ++i)
        for (int w : g.neighbors(comp[i]))
            if (!seen[w]) {
                seen[w] = 1;
                comp.push_back(w);
            }
    std::sort(comp.begin(), comp.end());
    return comp;
}

bool has_loops(const EmbeddedGraph& g) {
    for (int e : g.edge_ids())
        if (g.edge(e).u == g.edge(e).v) return true;
    return false;
}

bool has_parallel_edges(const EmbeddedGraph& g) {
    std::set<std::pair<int, int>> s;
    for (int e : g.edge_ids()) {
        int u = g.edge(e).u, v = g.edge(e).v;
        if (!s.insert({std::min(u, v), std::max(u, v)}).second) return true;
    }
    return false;
}

std::vector<int> radial_multi(const EmbeddedGraph& g, const FaceSet& fs, const std::vector<int>& sources) {
    int nv = g.vertex_capacity();
    int nf = (int)fs.faces.size();
    std::vector<int> dist(nv + nf, -1);
    std::vector<int> q;
    q.reserve(nv + nf);
    for (int s : sources) {
        if (!g.has_vertex(s)) throw Error("UnknownVertex", std::to_string(s));
        if (dist[s] < 0) {
            dist[s] = 0;
            q.push_back(s);
        }
    }
    for (size_t i = 0; i < q.size(); ++i) {
        int x = q[i];
        if (x < nv) {
            for (int f : fs.vertex_faces[x])
                if (dist[nv + f] < 0) {
                    dist[nv + f] = dist[x] + 1;
                    q.push_back(nv + f);
                }
        } else {
            for (int w : fs.faces[x - nv].vertices)
                if (dist[w] < 0) {
                    dist[w] = dist[x] + 1;
                    q.push_back(w);
                }
        }
    }
    std::vector<int> out(nv, -1);
    for (int v = 0; v < nv; ++v)
        if (dist[v] >= 0) out[v] = dist[v] / 2;
    return out;
}

RadialMap radial_bfs(const EmbeddedGraph& g, const FaceSet& fs, int source) {
    if (!g.has_vertex(source)) throw Error("UnknownVertex", std::to_string(source));
    return RadialMap{source, radial_multi(g, fs, {source})};
}

RadialMap radial_bfs(const EmbeddedGraph& g, int source) {
    return radial_bfs(g, compute_faces(g), source);
}

int radial_distance(const EmbeddedGraph& g, int u, int v) {
    if (!g.has_vertex(v)) throw Error("UnknownVertex", std::to_string(v));
    auto m = radial_bfs(g, u);
    if (m.dist[v] < 0) throw Error("Disconnected", "no face sequence joins " + std::to_string(u) + " and " + std::to_string(v));
    return m.dist[v];
}

EmbeddedGraph remove_vertices(const EmbeddedGraph& g, const std::vector<int>& dead) {
    std::vector<int> old_walk;
    if (!dead.empty() && g.num_edges() > 0) {
        FaceSet fs = compute_faces(g);
        int of = outer_face(g, fs);
        if (of >= 0) old_walk = fs.faces[of].darts;
    }
    EmbeddedGraph h = g;
    for (int v : dead) h.remove_vertex(v);
    if (dead.empty()) return h;
    h.outer_dart = -1;
    for (int d : old_walk)
        if (h.has_edge(d >> 1)) {
            h.outer_dart = d;
            break;
        }
    return h;
}

EmbeddedGraph induced(const EmbeddedGraph& g, const std::vector<int>& keep) {
    std::vector<char> k(g.vertex_capacity(), 0);
    for (int v : keep)
        if (g.has_vertex(v)) k[v] = 1;
    std::vector<int> dead;
    for (int v : g.vertices())
        if (!k[v]) dead.push_back(v);
    return remove_vertices(g, dead);
}

EmbeddedGraph from_geometry(const std::vector<std::pair<double, double>>& pts,
                            const std::vector<std::pair<int, int>>& edges) {
    EmbeddedGraph g;
    for (size_t i = 0; i < pts.size(); ++i) g.add_vertex();
    for (auto [u, v] : edges) g.add_edge(u, v);
    for (int v : g.vertices()) {
        std::vector<int> r = g.rotation(v);
        auto ang = [&](int e) {
            int w = g.other(e, v);
            return std::atan2(pts[w].second - pts[v].second, pts[w].first - pts[v].first);
        };
        std::stable_sort(r.begin(), r.end(), [&](int a, int b) { return ang(a) < ang(b); });
        g.set_rotation(v, r);
    }
    if (g.num_edges() == 0) return g;
    FaceSet fs = compute_faces(g);
    double best = 1e300;
    for (const Face& f : fs.faces) {
        if (f.darts.empty()) continue;
        double a = 0;
        for (int d : f.darts) {
            auto p = pts[g.tail(d)], q = pts[g.head(d)];
            a += p.first * q.second - q.first * p.second;
        }
        if (a < best) {
            best = a;
            g.outer_dart = f.darts.front();
        }
    }
    return g;
}

namespace {
double orient(std::pair<double, double> a, std::pair<double, double> b, std::pair<double, double> c) {
    return (b.first - a.first) * (c.second - a.second) - (b.second - a.second) * (c.first - a.first);
}
bool on_seg(std::pair<double, double> a, std::pair<double, double> b, std::pair<double, double> p) {
    return std::min(a.first, b.first) - 1e-12 <= p.first && p.first <= std::max(a.first, b.first) + 1e-12 &&
           std::min(a.second, b.second) - 1e-12 <= p.second && p.second <= std::max(a.second, b.second) + 1e-12;
}
}  // namespace

bool straight_line_crossing(const std::vector<std::pair<double, double>>& pts,
                            const std::vector<std::pair<int, int>>& edges) {
    for (size_t i = 0; i < edges.size(); ++i) {
        for (size_t j = i + 1; j < edges.size(); ++j) {
            auto [a, b] = edges[i];
            auto [c, d] = edges[j];
            // orientations scale with the square of the coordinates
            double sc = 1;
            for (int p : {a, b, c, d}) sc = std::max({sc, std::fabs(pts[p].first), std::fabs(pts[p].second)});
            const double eps = 1e-12 * sc * sc;
            bool share = a == c || a == d || b == c || b == d;
            double o1 = orient(pts[a], pts[b], pts[c]), o2 = orient(pts[a], pts[b], pts[d]);
            double o3 = orient(pts[c], pts[d], pts[a]), o4 = orient(pts[c], pts[d], pts[b]);
            if (share) {
                // collinear overlap through the shared endpoint
                int s = (a == c || a == d) ? a : b;
                int x = (s == a) ? b : a;
                int y = (s == c) ? d : c;
                if (std::fabs(orient(pts[s], pts[x], pts[y])) < eps) {
                    double dx1 = pts[x].first - pts[s].first, dy1 = pts[x].second - pts[s].second;
                    double dx2 = pts[y].first - pts[s].first, dy2 = pts[y].second - pts[s].second;
                    if (dx1 * dx2 + dy1 * dy2 > 0) return true;
                }
                continue;
            }
            if (((o1 > eps && o2 < -eps) || (o1 < -eps && o2 > eps)) &&
                ((o3 > eps && o4 < -eps) || (o3 < -eps && o4 > eps)))
                return true;
            if (std::fabs(o1) <= eps && on_seg(pts[a], pts[b], pts[c])) return true;
            if (std::fabs(o2) <= eps && on_seg(pts[a], pts[b], pts[d])) return true;
            if (std::fabs(o3) <= eps && on_seg(pts[c], pts[d], pts[a])) return true;
            if (std::fabs(o4) <= eps && on_seg(pts[c], pts[d], pts[b])) return true;
        }
    }
    return false;
}

EmbeddedGraph parse_graph(std::istream& in) {
    EmbeddedGraph g;
    std::string line;
    int lineno = 0;
    std::vector<std::pair<int, int>> term_lines;
    std::map<int, std::vector<int>> rots;
    std::map<int, int> rot_line;
    std::set<int> edge_seen;
    std::vector<std::pair<int, int>> outer;
    auto fail = [&](const std::string& msg) { throw Error("ParseError", "line " + std::to_string(lineno) + ": " + msg); };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string rec;
        if (!(ls >> rec)) continue;
        std::vector<long long> nums;
        std::string tok;
        while (ls >> tok) {
            try {
                size_t used = 0;
                long long x = std::stoll(tok, &used);
                if (used != tok.size() || x < 0 || x > 100000000) fail("bad number '" + tok + "'");
                nums.push_back(x);
            } catch (const Error&) {
                throw;
            } catch (...) {
                fail("bad number '" + tok + "'");
            }
        }
        if (rec == "v") {
            if (nums.size() != 1) fail("v expects one id");
            if (g.has_vertex((int)nums[0])) fail("duplicate vertex " + std::to_string(nums[0]));
            g.ensure_vertex((int)nums[0]);
        } else if (rec == "t") {
            if (nums.size() != 1) fail("t expects one id");
            term_lines.push_back({(int)nums[0], lineno});
        } else if (rec == "e") {
            if (nums.size() != 3) fail("e expects <eid> <u> <v>");
            int e = (int)nums[0], u = (int)nums[1], v = (int)nums[2];
            if (!edge_seen.insert(e).second) fail("duplicate edge " + std::to_string(e));
            if (!g.has_vertex(u) || !g.has_vertex(v)) fail("edge " + std::to_string(e) + " uses undeclared vertex");
            g.put_edge(e, u, v);
        } else if (rec == "rot") {
            if (nums.empty()) fail("rot expects a vertex");
            int v = (int)nums[0];
            if (rots.count(v)) fail("duplicate rotation for " + std::to_string(v));
            rots[v] = std::vector<int>(nums.begin() + 1, nums.end());
            rot_line[v] = lineno;
        } else if (rec == "o") {
            if (nums.size() != 2) fail("o expects <eid> <v>");
            outer.push_back({(int)nums[0], (int)nums[1]});
        } else {
            fail("unknown record '" + rec + "'");
        }
    }
    for (auto [t, ln] : term_lines) {
        if (!g.has_vertex(t)) {
            lineno = ln;
            fail("terminal " + std::to_string(t) + " is not a vertex");
        }
        g.set_terminal(t);
    }
    for (auto& [v, r] : rots) {
        lineno = rot_line[v];
        if (!g.has_vertex(v)) fail("rotation for unknown vertex " + std::to_string(v));
        for (int e : r)
            if (!g.has_edge(e)) fail("rotation of " + std::to_string(v) + " names unknown edge " + std::to_string(e));
        g.set_rotation(v, r);
    }
    std::vector<int> deg(g.vertex_capacity(), 0);
    for (int e : g.edge_ids()) {
        ++deg[g.edge(e).u];
        ++deg[g.edge(e).v];
    }
    for (int v : g.vertices())
        if (deg[v] > 0 && !rots.count(v))
            throw Error("ParseError", "missing rotation line for vertex " + std::to_string(v));
    for (auto [e, v] : outer) {
        if (!g.has_edge(e)) throw Error("ParseError", "outer record names unknown edge");
        g.outer_dart = g.edge(e).u == v ? 2 * e : 2 * e + 1;
    }
    return g;
}

EmbeddedGraph parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("ParseError", "cannot open " + path);
    return parse_graph(in);
}

EmbeddedGraph parse_graph_string(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

std::string serialize(const EmbeddedGraph& g) {
    std::ostringstream out;
    for (int v : g.vertices()) out << "v " << v << "\n";
    for (int t : g.terminals()) out << "t " << t << "\n";
    for (int e : g.edge_ids()) out << "e " << e << " " << g.edge(e).u << " " << g.edge(e).v << "\n";
    for (int v : g.vertices()) {
        if (g.degree(v) == 0) continue;
        out << "rot " << v;
        for (int e : g.rotation(v)) out << " " << e;
        out << "\n";
    }
    if (g.outer_dart >= 0 && g.has_edge(g.outer_dart >> 1))
        out << "o " << (g.outer_dart >> 1) << " " << g.tail(g.outer_dart) << "\n";
    return out.str();
}

}  // namespace tcycle
