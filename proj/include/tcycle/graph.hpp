#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tcycle {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

struct Edge {
    int u = -1;
    int v = -1;
    bool alive = false;
};

// Dart 2e runs u->v of edge e, dart 2e+1 runs v->u.
inline int twin(int d) { return d ^ 1; }

class EmbeddedGraph {
public:
    int add_vertex();
    void ensure_vertex(int id);
    // appends e to the end of both rotations
    int add_edge(int u, int v);
    void put_edge(int eid, int u, int v);  // no rotation update
    void remove_edge(int e);
    void remove_vertex(int v);
    // merges the other endpoint of e into `keep`, splicing its rotation in at e
    void contract_edge(int e, int keep);

    bool has_vertex(int v) const { return v >= 0 && v < (int)alive_.size() && alive_[v]; }
    bool has_edge(int e) const { return e >= 0 && e < (int)edges_.size() && edges_[e].alive; }
    int vertex_capacity() const { return (int)alive_.size(); }
    int edge_capacity() const { return (int)edges_.size(); }
    int num_vertices() const { return nv_; }
    int num_edges() const { return ne_; }

    std::vector<int> vertices() const;
    std::vector<int> edge_ids() const;
    const Edge& edge(int e) const { return edges_[e]; }
    int other(int e, int v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }
    int tail(int d) const { return (d & 1) ? edges_[d >> 1].v : edges_[d >> 1].u; }
    int head(int d) const { return tail(twin(d)); }

    const std::vector<int>& rotation(int v) const { return rot_[v]; }
    void set_rotation(int v, std::vector<int> r) { rot_[v] = std::move(r); }
    int degree(int v) const { return (int)rot_[v].size(); }
    std::vector<int> neighbors(int v) const;
    int find_edge(int u, int v) const;  // -1 if none

    bool is_terminal(int v) const { return has_vertex(v) && term_[v]; }
    void set_terminal(int v, bool t = true) { term_[v] = t; }
    std::vector<int> terminals() const;
    void clear_terminals();

    int outer_dart = -1;

private:
    std::vector<char> alive_;
    std::vector<char> term_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> rot_;
    int nv_ = 0;
    int ne_ = 0;
};

struct Face {
    int id = 0;
    std::vector<int> darts;     // boundary walk
    std::vector<int> vertices;  // distinct, ascending
};

struct FaceSet {
    std::vector<Face> faces;
    std::vector<int> dart_face;                // per dart id, -1 for dead edges
    std::vector<std::vector<int>> vertex_faces;  // per vertex id
};

// Dart ids leaving v, in rotation order. For a loop the first occurrence is 2e.
std::vector<int> darts_at(const EmbeddedGraph& g, int v);
// Face walking successor: keeps the face on the left.
int next_dart(const EmbeddedGraph& g, int d);

FaceSet compute_faces(const EmbeddedGraph& g);
// throws MalformedRotation / NonPlanarCertificate
FaceSet validate_embedding(const EmbeddedGraph& g);
int outer_face(const EmbeddedGraph& g, const FaceSet& fs);

std::vector<std::vector<int>> components(const EmbeddedGraph& g);
std::vector<int> component_of(const EmbeddedGraph& g, int v);
bool has_loops(const EmbeddedGraph& g);
bool has_parallel_edges(const EmbeddedGraph& g);

struct RadialMap {
    int source = -1;
    std::vector<int> dist;  // -1 = unreachable / absent
};

RadialMap radial_bfs(const EmbeddedGraph& g, const FaceSet& fs, int source);
RadialMap radial_bfs(const EmbeddedGraph& g, int source);
// distance to the nearest source
std::vector<int> radial_multi(const EmbeddedGraph& g, const FaceSet& fs, const std::vector<int>& sources);
int radial_distance(const EmbeddedGraph& g, int u, int v);

// Copy without the listed vertices; the outer face designation follows the old outer region.
EmbeddedGraph remove_vertices(const EmbeddedGraph& g, const std::vector<int>& dead);
// Only the listed vertices survive (ids kept).
EmbeddedGraph induced(const EmbeddedGraph& g, const std::vector<int>& keep);

// Straight-line drawing: rotation from angles, outer face from signed area.
EmbeddedGraph from_geometry(const std::vector<std::pair<double, double>>& pts,
                            const std::vector<std::pair<int, int>>& edges);
bool straight_line_crossing(const std::vector<std::pair<double, double>>& pts,
                            const std::vector<std::pair<int, int>>& edges);

EmbeddedGraph parse_graph(std::istream& in);
EmbeddedGraph parse_graph_file(const std::string& path);
EmbeddedGraph parse_graph_string(const std::string& text);
std::string serialize(const EmbeddedGraph& g);

}  // namespace tcycle
