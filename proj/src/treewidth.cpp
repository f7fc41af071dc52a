#include "tcycle/treewidth.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace tcycle {

int TreeDecomposition::width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, (int)b.size() - 1);
    return w;
}

std::vector<int> TreeDecomposition::parents() const {
    std::vector<int> par(bags.size(), -1);
    if (bags.empty()) return par;
    std::vector<char> seen(bags.size(), 0);
    std::vector<int> st{root};
    seen[root] = 1;
    while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        for (int y : adj[x])
            if (!seen[y]) {
                seen[y] = 1;
                par[y] = x;
                st.push_back(y);
            }
    }
    return par;
}

int TreeDecomposition::add_bag(std::vector<int> bag) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    bags.push_back(std::move(bag));
    adj.emplace_back();
    return (int)bags.size() - 1;
}

void TreeDecomposition::link(int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
}

int NiceTreeDecomposition::width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, (int)b.size() - 1);
    return w;
}

TreeDecomposition NiceTreeDecomposition::plain() const {
    TreeDecomposition td;
    td.bags = bags;
    td.adj.assign(bags.size(), {});
    for (int x = 0; x < size(); ++x)
        for (int c : children[x]) td.link(x, c);
    td.root = root < 0 ? 0 : root;
    return td;
}

std::vector<int> NiceTreeDecomposition::postorder() const {
    std::vector<int> out;
    if (root < 0) return out;
    std::vector<std::pair<int, size_t>> st{{root, 0}};
    while (!st.empty()) {
        auto& [x, i] = st.back();
        if (i < children[x].size()) {
            int c = children[x][i++];
            st.push_back({c, 0});
        } else {
            out.push_back(x);
            st.pop_back();
        }
    }
    return out;
}

namespace {

int pick_root(const TreeDecomposition& td) {
    int best = 0;
    for (int x = 1; x < td.size(); ++x)
        if (td.adj[x].size() > td.adj[best].size()) best = x;
    return best;
}

}  // namespace

int validate(const EmbeddedGraph& g, const TreeDecomposition& td) {
    int nb = td.size();
    if ((int)td.adj.size() != nb) throw Error("InvalidDecomposition", "adjacency size mismatch");
    if (nb == 0) {
        if (g.num_vertices() > 0) throw Error("VertexSubtreeDisconnected", "no bags");
        return -1;
    }
    int tedges = 0;
    for (int x = 0; x < nb; ++x) {
        for (int y : td.adj[x]) {
            if (y < 0 || y >= nb || y == x) throw Error("InvalidDecomposition", "bad tree edge");
            ++tedges;
        }
        for (int v : td.bags[x])
            if (!g.has_vertex(v)) throw Error("InvalidDecomposition", "bag " + std::to_string(x) + " names unknown vertex " + std::to_string(v));
    }
    if (tedges != 2 * (nb - 1)) throw Error("InvalidDecomposition", "tree has wrong edge count");
    {
        std::vector<char> seen(nb, 0);
        std::vector<int> st{0};
        seen[0] = 1;
        int cnt = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : td.adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    ++cnt;
                    st.push_back(y);
                }
        }
        if (cnt != nb) throw Error("InvalidDecomposition", "tree is disconnected");
    }
    std::vector<std::vector<int>> occ(g.vertex_capacity());
    std::vector<std::set<int>> in_bag(nb);
    for (int x = 0; x < nb; ++x)
        for (int v : td.bags[x]) {
            occ[v].push_back(x);
            in_bag[x].insert(v);
        }
    for (int v : g.vertices()) {
        if (occ[v].empty()) throw Error("VertexSubtreeDisconnected", "vertex " + std::to_string(v) + " is in no bag");
        std::vector<char> mark(nb, 0), seen(nb, 0);
        for (int x : occ[v]) mark[x] = 1;
        std::vector<int> st{occ[v][0]};
        seen[occ[v][0]] = 1;
        size_t cnt = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : td.adj[x])
                if (mark[y] && !seen[y]) {
                    seen[y] = 1;
                    ++cnt;
                    st.push_back(y);
                }
        }
        if (cnt != occ[v].size()) throw Error("VertexSubtreeDisconnected", "bags of vertex " + std::to_string(v) + " are not connected");
    }
    for (int e : g.edge_ids()) {
        int u = g.edge(e).u, v = g.edge(e).v;
        bool ok = false;
        for (int x : occ[u])
            if (in_bag[x].count(v)) {
                ok = true;
                break;
            }
        if (!ok) throw Error("EdgeUncovered", "edge " + std::to_string(e) + " (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    return td.width();
}

int validate_nice(const EmbeddedGraph& g, const NiceTreeDecomposition& td) {
    for (int x = 0; x < td.size(); ++x) {
        const auto& b = td.bags[x];
        const auto& ch = td.children[x];
        auto diff_one = [&](const std::vector<int>& big, const std::vector<int>& small, int v) {
            if (big.size() != small.size() + 1) return false;
            std::vector<int> s = small;
            s.push_back(v);
            std::sort(s.begin(), s.end());
            return s == big;
        };
        bool ok = false;
        switch (td.kind[x]) {
            case NodeKind::Leaf: ok = ch.empty() && b.empty(); break;
            case NodeKind::Introduce: ok = ch.size() == 1 && diff_one(b, td.bags[ch[0]], td.vertex[x]); break;
            case NodeKind::Forget: ok = ch.size() == 1 && diff_one(td.bags[ch[0]], b, td.vertex[x]); break;
            case NodeKind::Join: ok = ch.size() == 2 && td.bags[ch[0]] == b && td.bags[ch[1]] == b; break;
        }
        if (!ok) throw Error("InvalidDecomposition", "node " + std::to_string(x) + " violates nice form");
    }
    return validate(g, td.plain());
}

namespace {

TreeDecomposition greedy_fill(const EmbeddedGraph& g) {
    std::map<int, std::set<int>> nb;
    for (int v : g.vertices()) nb[v];
    for (int e : g.edge_ids()) {
        int u = g.edge(e).u, v = g.edge(e).v;
        if (u == v) continue;
        nb[u].insert(v);
        nb[v].insert(u);
    }
    std::vector<int> order;
    std::map<int, std::vector<int>> bag;
    std::map<int, int> pos;
    while (!nb.empty()) {
        int best = -1;
        long bf = -1;
        size_t bd = 0;
        for (const auto& [v, s] : nb) {
            long fill = 0;
            for (auto a = s.begin(); a != s.end(); ++a)
                for (auto b = std::next(a); b != s.end(); ++b)
                    if (!nb[*a].count(*b)) ++fill;
            if (best < 0 || fill < bf || (fill == bf && s.size() < bd)) {
                best = v;
                bf = fill;
                bd = s.size();
            }
        }
        std::vector<int> s(nb[best].begin(), nb[best].end());
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j) {
                nb[s[i]].insert(s[j]);
                nb[s[j]].insert(s[i]);
            }
        for (int w : s) nb[w].erase(best);
        nb.erase(best);
        s.push_back(best);
        std::sort(s.begin(), s.end());
        bag[best] = s;
        pos[best] = (int)order.size();
        order.push_back(best);
    }
    std::map<int, int> parent;
    for (int v : order) {
        int p = -1;
        for (int w : bag[v])
            if (w != v && (p < 0 || pos[w] < pos[p])) p = w;
        parent[v] = p;
    }
    std::map<int, std::vector<int>> kids;
    for (int v : order)
        if (parent[v] >= 0) kids[parent[v]].push_back(v);
    std::set<int> dead;
    for (int v : order) {
        int p = parent[v];
        if (p < 0) continue;
        if (std::includes(bag[p].begin(), bag[p].end(), bag[v].begin(), bag[v].end())) {
            for (int c : kids[v]) {
                parent[c] = p;
                kids[p].push_back(c);
            }
            kids[v].clear();
            auto& kp = kids[p];
            kp.erase(std::find(kp.begin(), kp.end(), v));
            dead.insert(v);
        }
    }
    TreeDecomposition td;
    std::map<int, int> node;
    for (int v : order)
        if (!dead.count(v)) node[v] = td.add_bag(bag[v]);
    int prev_root = -1;
    for (int v : order) {
        if (dead.count(v)) continue;
        if (parent[v] >= 0)
            td.link(node[v], node[parent[v]]);
        else {
            if (prev_root >= 0) td.link(prev_root, node[v]);
            prev_root = node[v];
        }
    }
    if (td.bags.empty()) td.add_bag({});
    return td;
}

TreeDecomposition radial_layers(const EmbeddedGraph& g) {
    TreeDecomposition td;
    if (g.num_vertices() == 0) {
        td.add_bag({});
        return td;
    }
    FaceSet fs = compute_faces(g);
    int outer = outer_face(g, fs);
    std::vector<int> sources;
    for (const auto& comp : components(g)) {
        std::set<int> in(comp.begin(), comp.end());
        int f = -1;
        if (outer >= 0 && !fs.faces[outer].vertices.empty() && in.count(fs.faces[outer].vertices.front())) f = outer;
        if (f < 0)
            for (const Face& fc : fs.faces)
                if (!fc.vertices.empty() && in.count(fc.vertices.front()) && (f < 0 || fc.darts.size() > fs.faces[f].darts.size())) f = fc.id;
        for (int v : fs.faces[f].vertices) sources.push_back(v);
    }
    auto dist = radial_multi(g, fs, sources);
    int maxd = 0;
    for (int v : g.vertices()) maxd = std::max(maxd, dist[v]);
    std::vector<std::vector<int>> layer(maxd + 1);
    for (int v : g.vertices()) layer[dist[v]].push_back(v);
    // bag i holds layers i-1, i, i+1
    int prev = -1;
    for (int i = 0; i <= maxd; ++i) {
        std::vector<int> b;
        for (int j = std::max(0, i - 1); j <= std::min(maxd, i + 1); ++j) b.insert(b.end(), layer[j].begin(), layer[j].end());
        int x = td.add_bag(b);
        if (prev >= 0) td.link(prev, x);
        prev = x;
    }
    return td;
}

struct NiceBuilder {
    const TreeDecomposition& td;
    std::vector<int> parent;
    NiceTreeDecomposition out;

    int node(std::vector<int> bag, NodeKind k, int v, std::vector<int> ch) {
        out.bags.push_back(std::move(bag));
        out.kind.push_back(k);
        out.vertex.push_back(v);
        out.children.push_back(std::move(ch));
        return out.size() - 1;
    }

    int transition(int x, std::vector<int> from, const std::vector<int>& to) {
        for (int v : std::vector<int>(from)) {
            if (std::binary_search(to.begin(), to.end(), v)) continue;
            from.erase(std::find(from.begin(), from.end(), v));
            x = node(from, NodeKind::Forget, v, {x});
        }
        for (int v : to) {
            if (std::binary_search(from.begin(), from.end(), v)) continue;
            from.insert(std::lower_bound(from.begin(), from.end(), v), v);
            x = node(from, NodeKind::Introduce, v, {x});
        }
        return x;
    }

    int build(int t) {
        std::vector<int> kids;
        for (int y : td.adj[t])
            if (y != parent[t]) kids.push_back(y);
        if (kids.empty()) {
            int leaf = node({}, NodeKind::Leaf, -1, {});
            return transition(leaf, {}, td.bags[t]);
        }
        int cur = -1;
        for (int c : kids) {
            int x = build(c);
            int y = transition(x, td.bags[c], td.bags[t]);
            cur = cur < 0 ? y : node(td.bags[t], NodeKind::Join, -1, {cur, y});
        }
        return cur;
    }
};

}  // namespace

TreeDecomposition build_td(const EmbeddedGraph& g, TdMode mode) {
    TreeDecomposition td = mode == TdMode::GreedyFill ? greedy_fill(g) : radial_layers(g);
    td.root = pick_root(td);
    validate(g, td);
    return td;
}

NiceTreeDecomposition make_nice(const TreeDecomposition& td) {
    NiceBuilder b{td, td.parents(), {}};
    if (td.bags.empty()) {
        b.out.root = b.node({}, NodeKind::Leaf, -1, {});
        return b.out;
    }
    int top = b.build(td.root);
    b.out.root = b.transition(top, td.bags[td.root], {});
    return b.out;
}

NiceTreeDecomposition nice_decomposition(const EmbeddedGraph& g, TdMode mode) {
    NiceTreeDecomposition n = make_nice(build_td(g, mode));
    validate_nice(g, n);
    return n;
}

std::vector<int> lca_closure(const std::vector<int>& parent, const std::vector<int>& marked) {
    int n = (int)parent.size();
    std::vector<int> m = marked;
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (m.size() <= 1) return m;
    std::vector<std::vector<int>> kids(n);
    int root = -1;
    for (int x = 0; x < n; ++x) {
        if (parent[x] < 0)
            root = x;
        else
            kids[parent[x]].push_back(x);
    }
    std::vector<int> pre(n, 0), depth(n, 0);
    int c = 0;
    std::vector<int> st{root};
    while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        pre[x] = c++;
        for (auto it = kids[x].rbegin(); it != kids[x].rend(); ++it) {
            depth[*it] = depth[x] + 1;
            st.push_back(*it);
        }
    }
    auto lca = [&](int a, int b) {
        while (depth[a] > depth[b]) a = parent[a];
        while (depth[b] > depth[a]) b = parent[b];
        while (a != b) {
            a = parent[a];
            b = parent[b];
        }
        return a;
    };
    std::sort(m.begin(), m.end(), [&](int a, int b) { return pre[a] < pre[b]; });
    std::vector<int> out = m;
    for (size_t i = 0; i + 1 < m.size(); ++i) out.push_back(lca(m[i], m[i + 1]));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string to_pace(const TreeDecomposition& td, int n) {
    std::ostringstream os;
    os << "s td " << td.size() << ' ' << td.width() + 1 << ' ' << n << '\n';
    for (int x = 0; x < td.size(); ++x) {
        os << "b " << x + 1;
        for (int v : td.bags[x]) os << ' ' << v;
        os << '\n';
    }
    for (int x = 0; x < td.size(); ++x)
        for (int y : td.adj[x])
            if (x < y) os << x + 1 << ' ' << y + 1 << '\n';
    return os.str();
}

TreeDecomposition parse_pace(std::istream& in) {
    TreeDecomposition td;
    std::string line;
    int lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c") continue;
        auto fail = [&](const std::string& what) { throw Error("ParseError", "line " + std::to_string(lineno) + ": " + what); };
        if (tok == "s") {
            std::string td_tok;
            int nb, w, n;
            if (!(ls >> td_tok >> nb >> w >> n) || td_tok != "td" || nb < 0) fail("bad header");
            td.bags.assign(nb, {});
            td.adj.assign(nb, {});
            header = true;
        } else if (!header) {
            fail("missing header");
        } else if (tok == "b") {
            int id, v;
            if (!(ls >> id) || id < 1 || id > td.size()) fail("bad bag id");
            while (ls >> v) td.bags[id - 1].push_back(v);
            std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
        } else {
            int a, b;
            try {
                a = std::stoi(tok);
            } catch (...) {
                fail("unknown record");
            }
            if (!(ls >> b) || a < 1 || b < 1 || a > td.size() || b > td.size()) fail("bad tree edge");
            td.link(a - 1, b - 1);
        }
    }
    if (!header) throw Error("ParseError", "missing header");
    td.root = td.bags.empty() ? 0 : pick_root(td);
    return td;
}

}  // namespace tcycle
