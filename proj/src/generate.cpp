#include "tcycle/generate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>

namespace tcycle {

namespace {
constexpr double PI = 3.14159265358979323846;

std::vector<int> pick(std::vector<int> pool, int k, std::mt19937_64& rng) {
    if (k > (int)pool.size()) throw Error("BadParams", "not enough candidate terminals");
    for (int i = 0; i < k; ++i) {
        int j = i + (int)(rng() % (pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}
}  // namespace

EmbeddedGraph embed_checked(const std::vector<std::pair<double, double>>& pts, const std::vector<std::pair<int, int>>& edges) {
    if (straight_line_crossing(pts, edges)) throw Error("BadParams", "drawing has crossing edges");
    EmbeddedGraph g = from_geometry(pts, edges);
    validate_embedding(g);
    return g;
}

EmbeddedGraph gen_nested_rings(int depth, int ring, int k, bool hub, uint64_t seed) {
    if (depth < 1 || ring < 3 || k < 0) throw Error("BadParams", "nested-rings needs depth >= 1, ring >= 3");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<double, double>> pts;
    std::vector<std::pair<int, int>> edges;
    double rad = 1.0;
    for (int i = 0; i < depth; ++i) {
        int base = (int)pts.size();
        for (int j = 0; j < ring; ++j) {
            double a = 2 * PI * j / ring;
            pts.push_back({rad * std::cos(a), rad * std::sin(a)});
        }
        for (int j = 0; j < ring; ++j) edges.push_back({base + j, base + (j + 1) % ring});
        if (i > 0) {
            int prev = base - ring;
            std::vector<int> sp;
            for (int j = 0; j < ring; ++j)
                if (rng() % 2) sp.push_back(j);
            if (sp.empty()) sp.push_back((int)(rng() % ring));
            for (int j : sp) edges.push_back({prev + j, base + j});
        }
        rad *= 2.5;
    }
    if (hub) {
        int h = (int)pts.size();
        pts.push_back({0, 0});
        for (int j = 0; j < ring; ++j) edges.push_back({h, j});
    }
    EmbeddedGraph g = embed_checked(pts, edges);
    std::vector<int> outer;
    for (int j = 0; j < ring; ++j) outer.push_back((depth - 1) * ring + j);
    for (int t : pick(outer, std::min(k, ring), rng)) g.set_terminal(t);
    return g;
}

EmbeddedGraph gen_grid(int rows, int cols, int k, uint64_t seed) {
    if (rows < 1 || cols < 1 || rows * cols < 2) throw Error("BadParams", "grid too small");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<double, double>> pts;
    std::vector<std::pair<int, int>> edges;
    auto id = [&](int r, int c) { return c * rows + r; };
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) pts.push_back({(double)c, (double)r});
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) {
            if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
            if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
        }
    EmbeddedGraph g = embed_checked(pts, edges);
    // boundary vertices nearest the left end
    std::vector<int> cand;
    for (int c = 0; c < cols && (int)cand.size() < 2 * k; ++c) {
        if (c == 0 || c == cols - 1) {
            for (int r = 0; r < rows; ++r) cand.push_back(id(r, c));
        } else {
            cand.push_back(id(0, c));
            if (rows > 1) cand.push_back(id(rows - 1, c));
        }
    }
    cand.resize(std::min<size_t>(cand.size(), 2 * k));
    for (int t : pick(cand, k, rng)) g.set_terminal(t);
    return g;
}

EmbeddedGraph gen_random_planar(int n, int k, double keep, uint64_t seed) {
    if (n < 1 || k < 0 || k > n) throw Error("BadParams", "random-planar needs 0 <= k <= n, n >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<std::pair<double, double>> pts(n);
    for (auto& p : pts) p = {U(rng), U(rng)};
    std::vector<std::pair<int, int>> cand;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) cand.push_back({i, j});
    auto len = [&](std::pair<int, int> e) {
        double dx = pts[e.first].first - pts[e.second].first, dy = pts[e.first].second - pts[e.second].second;
        return dx * dx + dy * dy;
    };
    std::stable_sort(cand.begin(), cand.end(), [&](auto a, auto b) { return len(a) < len(b); });
    std::vector<std::pair<int, int>> tri;
    for (auto e : cand) {
        tri.push_back(e);
        bool bad = false;
        for (size_t i = 0; i + 1 < tri.size() && !bad; ++i) {
            std::vector<std::pair<int, int>> two{tri[i], e};
            bad = straight_line_crossing(pts, two);
        }
        if (bad) tri.pop_back();
    }
    // spanning tree first (in length order), then a random share of the rest
    std::vector<int> par(n);
    std::iota(par.begin(), par.end(), 0);
    auto find = [&](int x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
    };
    std::vector<std::pair<int, int>> edges;
    for (auto e : tri) {
        int a = find(e.first), b = find(e.second);
        if (a != b) {
            par[a] = b;
            edges.push_back(e);
        } else if (U(rng) < keep) {
            edges.push_back(e);
        }
    }
    EmbeddedGraph g = embed_checked(pts, edges);
    std::vector<int> all;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) > 0 || n == 1) all.push_back(v);
    for (int t : pick(all, k, rng)) g.set_terminal(t);
    return g;
}

EmbeddedGraph gen_concentric_gadget(int depth, int ring, int k, uint64_t seed) {
    if (depth < 0 || ring < 3 || k < 1) throw Error("BadParams", "gadget needs depth >= 0, ring >= 3, k >= 1");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<double, double>> pts;
    std::vector<std::pair<int, int>> edges;
    double rad = 1.0;
    for (int i = 0; i <= depth; ++i) {
        int base = (int)pts.size();
        double off = (i % 2) * PI / ring;
        for (int j = 0; j < ring; ++j) {
            double a = 2 * PI * j / ring + off;
            pts.push_back({rad * std::cos(a), rad * std::sin(a)});
        }
        for (int j = 0; j < ring; ++j) edges.push_back({base + j, base + (j + 1) % ring});
        if (i > 0) {
            int prev = base - ring;
            int cnt = 1 + (int)(rng() % 2);
            std::set<int> sp;
            while ((int)sp.size() < cnt) sp.insert((int)(rng() % ring));
            for (int j : sp) edges.push_back({prev + j, base + j});
        }
        rad *= 2.5;
    }
    int outer_base = depth * ring;
    double R = rad * 1.3;
    std::set<int> att;
    while ((int)att.size() < std::min(k, ring)) att.insert((int)(rng() % ring));
    for (int j : att) {
        int t = (int)pts.size();
        double a = 2 * PI * j / ring + (depth % 2) * PI / ring;
        pts.push_back({R * std::cos(a), R * std::sin(a)});
        edges.push_back({outer_base + j, t});
        edges.push_back({outer_base + (j + 1) % ring, t});
    }
    EmbeddedGraph g = embed_checked(pts, edges);
    for (int t = (depth + 1) * ring; t < (int)pts.size(); ++t) g.set_terminal(t);
    return g;
}

PolarConfig polar_configuration(int R, int M, const std::vector<Dip>& dips) {
    int m = (int)dips.size();
    if (m == 0 || R < 0 || M < 4) throw Error("BadParams", "polar configuration needs dips");
    std::vector<std::pair<int, int>> ends;  // (angle, dip)
    for (int i = 0; i < m; ++i) {
        const Dip& d = dips[i];
        if (!(0 <= d.a && d.a < d.b && d.b < M) || d.ring < 0 || d.ring > R) throw Error("BadParams", "bad dip");
        ends.push_back({d.a, i});
        ends.push_back({d.b, i});
    }
    std::sort(ends.begin(), ends.end());
    for (int i = 0; i + 1 < 2 * m; ++i)
        if (ends[i].first == ends[i + 1].first) throw Error("BadParams", "dips share an angle");
    int n2 = 2 * m;
    std::vector<int> partner_in(n2), outside(n2, -1);
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j)
            if (i != j && ends[i].second == ends[j].second) partner_in[i] = j;
    // non-crossing outside matchings as balanced bracket words; keep the first giving one cycle
    std::vector<int> stack;
    std::function<bool(int)> dfs = [&](int i) {
        if (i == n2) {
            int cur = 0, steps = 0;
            do {
                cur = outside[partner_in[cur]];
                ++steps;
            } while (cur != 0 && steps <= m);
            return cur == 0 && steps == m;
        }
        int rem = n2 - i;
        if ((int)stack.size() < rem) {
            stack.push_back(i);
            if (dfs(i + 1)) return true;
            stack.pop_back();
        }
        if (!stack.empty()) {
            int o = stack.back();
            stack.pop_back();
            outside[o] = i;
            outside[i] = o;
            if (dfs(i + 1)) return true;
            outside[o] = outside[i] = -1;
            stack.push_back(o);
        }
        return false;
    };
    if (!dfs(0)) throw Error("BadParams", "no single loop through the dips");
    std::vector<int> height(n2, 0);
    for (int len = 1; len < n2; ++len)
        for (int i = 0; i + len < n2; ++i) {
            int j = i + len;
            if (outside[i] != j) continue;
            int h = 1;
            for (int x = i + 1; x < j; ++x)
                if (outside[x] > x) h = std::max(h, height[x] + 1);
            height[i] = height[j] = h;
        }
    int H = *std::max_element(height.begin(), height.end());
    PolarConfig pc;
    pc.R = R;
    pc.M = M;
    pc.H = H;
    int rings = R + H + 1;
    std::vector<std::pair<double, double>> pts;
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rings; ++r)
        for (int a = 0; a < M; ++a) {
            double ang = 2 * PI * a / M;
            pts.push_back({(r + 1) * std::cos(ang), (r + 1) * std::sin(ang)});
        }
    for (int r = 0; r < rings; ++r)
        for (int a = 0; a < M; ++a) {
            edges.push_back({pc.vid(r, a), pc.vid(r, a + 1)});
            if (r + 1 < rings) edges.push_back({pc.vid(r, a), pc.vid(r + 1, a)});
        }
    pc.g = embed_checked(pts, edges);
    for (int r = 0; r <= R; ++r) {
        std::vector<int> c;
        for (int a = 0; a < M; ++a) c.push_back(pc.g.find_edge(pc.vid(r, a), pc.vid(r, a + 1)));
        pc.cycles.push_back(c);
    }
    std::vector<int> walk;
    auto go = [&](int r, int a) {
        int v = pc.vid(r, a);
        if (walk.empty() || walk.back() != v) walk.push_back(v);
    };
    auto route = [&](int r0, int a0, int r1, int a1, int rm) {
        // vertical to ring rm, along it, vertical back
        int step = rm >= r0 ? 1 : -1;
        for (int r = r0; r != rm; r += step) go(r, a0);
        int da = a1 >= a0 ? 1 : -1;
        for (int a = a0; a != a1; a += da) go(rm, a);
        step = r1 >= rm ? 1 : -1;
        for (int r = rm; r != r1; r += step) go(r, a1);
        go(r1, a1);
    };
    int cur = 0;
    for (int s = 0; s < m; ++s) {
        int nx = partner_in[cur];
        route(R, ends[cur].first, R, ends[nx].first, dips[ends[cur].second].ring);
        int o = outside[nx];
        route(R, ends[nx].first, R, ends[o].first, R + height[nx]);
        pc.T.push_back(pc.vid(R + height[nx], ends[nx].first));
        cur = o;
    }
    if (walk.front() == walk.back()) walk.pop_back();
    std::set<int> seen(walk.begin(), walk.end());
    if (seen.size() != walk.size()) throw Error("BadParams", "dips collide");
    for (size_t i = 0; i < walk.size(); ++i) pc.loop.push_back(pc.g.find_edge(walk[i], walk[(i + 1) % walk.size()]));
    std::sort(pc.T.begin(), pc.T.end());
    pc.T.erase(std::unique(pc.T.begin(), pc.T.end()), pc.T.end());
    for (int t : pc.T) pc.g.set_terminal(t);
    return pc;
}

EmbeddedGraph generate(const std::string& family, const GenParams& p, uint64_t seed) {
    if (family == "nested-rings") return gen_nested_rings(p.depth, p.ring, p.k, p.hub, seed);
    if (family == "grid-with-terminals") {
        int rows = std::max(1, p.rows);
        int cols = std::max(2, (p.n + rows - 1) / rows);
        return gen_grid(rows, cols, p.k, seed);
    }
    if (family == "random-planar") return gen_random_planar(p.n, p.k, p.keep, seed);
    if (family == "concentric-gadget") return gen_concentric_gadget(p.depth, p.ring, p.k, seed);
    throw Error("BadParams", "unknown family " + family);
}

}  // namespace tcycle
