#include "sepcycle/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <string>

namespace sepcycle {

Hypergraph Hypergraph::create(int n_vertices, std::vector<std::vector<int>> edge_list) {
    if (n_vertices < 0) throw ValidationError("negative vertex count");
    for (std::size_t e = 0; e < edge_list.size(); ++e) {
        auto& edge = edge_list[e];
        if (edge.size() < 2)
            throw ValidationError("edges[" + std::to_string(e) + "]: singleton edge");
        for (int v : edge) {
            if (v < 0 || v >= n_vertices)
                throw ValidationError("edges[" + std::to_string(e) + "]: vertex index " +
                                      std::to_string(v) + " out of range");
        }
        auto sorted = edge;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ValidationError("edges[" + std::to_string(e) + "]: duplicate vertex");
    }
    Hypergraph h;
    h.n = n_vertices;
    h.edges = std::move(edge_list);
    return h;
}

bool Hypergraph::is_graph() const {
    return std::all_of(edges.begin(), edges.end(),
                       [](const std::vector<int>& e) { return e.size() == 2; });
}

int Hypergraph::min_edge_size() const {
    std::size_t k = 0;
    for (const auto& e : edges) k = (k == 0) ? e.size() : std::min(k, e.size());
    return static_cast<int>(k);
}

std::optional<int> Hypergraph::uniform_size() const {
    if (edges.empty()) return std::nullopt;
    const std::size_t k = edges.front().size();
    for (const auto& e : edges)
        if (e.size() != k) return std::nullopt;
    return static_cast<int>(k);
}

std::vector<int> Hypergraph::vertex_degrees() const {
    std::vector<int> deg(n, 0);
    for (const auto& e : edges)
        for (int v : e) ++deg[v];
    return deg;
}

bool Coloring::valid_for(const Hypergraph& h) const {
    for (const auto& e : h.edges) {
        bool red = false, blue = false;
        for (int v : e) (color[v] == VColor::Red ? red : blue) = true;
        if (!red || !blue) return false;
    }
    return true;
}

void Coloring::flip_component(int comp) {
    for (std::size_t v = 0; v < color.size(); ++v)
        if (component[v] == comp) color[v] = opposite(color[v]);
    if (comp >= 0 && comp < static_cast<int>(flipped.size())) flipped[comp] = !flipped[comp];
}

std::vector<int> Coloring::red_vertices() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < color.size(); ++v)
        if (color[v] == VColor::Red) out.push_back(static_cast<int>(v));
    return out;
}

std::vector<int> Coloring::blue_vertices() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < color.size(); ++v)
        if (color[v] == VColor::Blue) out.push_back(static_cast<int>(v));
    return out;
}

namespace {

std::vector<std::vector<int>> adjacency(const Hypergraph& g) {
    std::vector<std::vector<int>> adj(g.n);
    for (const auto& e : g.edges) {
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }
    return adj;
}

std::vector<int> components_from_adjacency(int n, const std::vector<std::vector<int>>& adj) {
    std::vector<int> comp(n, -1);
    int next = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = next;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                if (comp[v] == -1) {
                    comp[v] = next;
                    q.push(v);
                }
            }
        }
        ++next;
    }
    return comp;
}

}  // namespace

std::vector<int> connected_components(const Hypergraph& g) {
    if (!g.is_graph()) throw NotAGraph("connected_components requires all edges of size 2");
    return components_from_adjacency(g.n, adjacency(g));
}

std::vector<int> hyper_components(const Hypergraph& h) {
    std::vector<std::vector<int>> adj(h.n);
    for (const auto& e : h.edges) {
        for (std::size_t i = 1; i < e.size(); ++i) {
            adj[e[0]].push_back(e[i]);
            adj[e[i]].push_back(e[0]);
        }
    }
    return components_from_adjacency(h.n, adj);
}

BipartitionResult bipartition(const Hypergraph& g) {
    if (!g.is_graph()) throw NotAGraph("bipartition requires all edges of size 2");
    const auto adj = adjacency(g);
    std::vector<int> comp(g.n, -1);
    std::vector<int> parent(g.n, -1);
    std::vector<int> depth(g.n, 0);
    std::vector<VColor> color(g.n, VColor::Red);
    int ncomp = 0;

    for (int s = 0; s < g.n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = ncomp;
        color[s] = VColor::Red;  // canonical anchor: lowest-index vertex is red
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                if (comp[v] == -1) {
                    comp[v] = ncomp;
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    color[v] = opposite(color[u]);
                    q.push(v);
                } else if (color[v] == color[u]) {
                    // Odd cycle: walk u and v up to their common ancestor.
                    std::vector<int> up_u{u}, up_v{v};
                    int a = u, b = v;
                    while (depth[a] > depth[b]) up_u.push_back(a = parent[a]);
                    while (depth[b] > depth[a]) up_v.push_back(b = parent[b]);
                    while (a != b) {
                        up_u.push_back(a = parent[a]);
                        up_v.push_back(b = parent[b]);
                    }
                    std::vector<int> cycle(up_u.rbegin(), up_u.rend());  // lca .. u
                    for (std::size_t i = 0; i + 1 < up_v.size(); ++i) cycle.push_back(up_v[i]);
                    BipartitionResult res;
                    res.odd_cycle = std::move(cycle);
                    return res;
                }
            }
        }
        ++ncomp;
    }

    Coloring c;
    c.color = std::move(color);
    c.component = std::move(comp);
    c.flipped.assign(ncomp, false);
    BipartitionResult res;
    res.coloring = std::move(c);
    return res;
}

namespace {

// Backtracking state for the exact 2-coloring search.
struct ExactSearch {
    const Hypergraph& h;
    std::vector<std::vector<int>> edges_of;  // vertex -> incident edge ids
    std::vector<int> assigned;               // -1 / 0 red / 1 blue
    std::vector<int> red_count, blue_count, open_count;
    std::vector<int> trail;

    explicit ExactSearch(const Hypergraph& hg) : h(hg) {
        edges_of.resize(h.n);
        for (std::size_t e = 0; e < h.edges.size(); ++e)
            for (int v : h.edges[e]) edges_of[v].push_back(static_cast<int>(e));
        assigned.assign(h.n, -1);
        red_count.assign(h.edges.size(), 0);
        blue_count.assign(h.edges.size(), 0);
        open_count.resize(h.edges.size());
        for (std::size_t e = 0; e < h.edges.size(); ++e)
            open_count[e] = static_cast<int>(h.edges[e].size());
    }

    // Assign v, run unit propagation; false on conflict. Appends to trail.
    bool assign(int v, int val) {
        std::size_t start = trail.size();
        if (!set(v, val)) {
            undo(start);
            return false;
        }
        std::size_t head = start;
        while (head < trail.size()) {
            int u = trail[head++];
            for (int e : edges_of[u]) {
                const auto& edge = h.edges[e];
                const int sz = static_cast<int>(edge.size());
                if (open_count[e] == 0) {
                    if (red_count[e] == sz || blue_count[e] == sz) {
                        undo(start);
                        return false;
                    }
                } else if (open_count[e] == 1 &&
                           (red_count[e] == sz - 1 || blue_count[e] == sz - 1)) {
                    const int forced = red_count[e] == sz - 1 ? 1 : 0;
                    for (int w : edge) {
                        if (assigned[w] == -1) {
                            if (!set(w, forced)) {
                                undo(start);
                                return false;
                            }
                            break;
                        }
                    }
                }
            }
        }
        return true;
    }

    bool set(int v, int val) {
        if (assigned[v] != -1) return assigned[v] == val;
        assigned[v] = val;
        trail.push_back(v);
        for (int e : edges_of[v]) {
            --open_count[e];
            ++(val == 0 ? red_count[e] : blue_count[e]);
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail.size() > mark) {
            int v = trail.back();
            trail.pop_back();
            for (int e : edges_of[v]) {
                ++open_count[e];
                --(assigned[v] == 0 ? red_count[e] : blue_count[e]);
            }
            assigned[v] = -1;
        }
    }

    bool solve(const std::vector<int>& order, std::size_t idx) {
        while (idx < order.size() && assigned[order[idx]] != -1) ++idx;
        if (idx == order.size()) return true;
        const int v = order[idx];
        for (int val : {0, 1}) {
            std::size_t mark = trail.size();
            if (assign(v, val) && solve(order, idx + 1)) return true;
            undo(mark);
        }
        return false;
    }
};

Coloring make_coloring(const Hypergraph& h, const std::vector<VColor>& color) {
    Coloring c;
    c.color = color;
    c.component = hyper_components(h);
    int ncomp = 0;
    for (int id : c.component) ncomp = std::max(ncomp, id + 1);
    c.flipped.assign(ncomp, false);
    return c;
}

}  // namespace

std::optional<Coloring> two_color_exact(const Hypergraph& h) {
    ExactSearch search(h);
    const auto deg = h.vertex_degrees();
    std::vector<int> order(h.n);
    for (int i = 0; i < h.n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return deg[a] > deg[b]; });
    if (!search.solve(order, 0)) return std::nullopt;
    std::vector<VColor> color(h.n, VColor::Red);
    for (int v = 0; v < h.n; ++v)
        color[v] = search.assigned[v] == 1 ? VColor::Blue : VColor::Red;
    Coloring c = make_coloring(h, color);
    return c;
}

std::optional<Coloring> two_color_random(const Hypergraph& h, int max_restarts,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<VColor> color(h.n, VColor::Red);
    for (int trial = 0; trial < max_restarts; ++trial) {
        for (int v = 0; v < h.n; ++v)
            color[v] = (rng() & 1u) ? VColor::Blue : VColor::Red;
        bool ok = true;
        for (const auto& e : h.edges) {
            bool red = false, blue = false;
            for (int v : e) (color[v] == VColor::Red ? red : blue) = true;
            if (!red || !blue) {
                ok = false;
                break;
            }
        }
        if (ok) return make_coloring(h, color);
    }
    return std::nullopt;
}

bool lll_condition(const Hypergraph& h) {
    if (h.edges.empty()) return true;
    const int m = static_cast<int>(h.edges.size());
    std::vector<std::vector<bool>> member(m);
    for (int e = 0; e < m; ++e) {
        member[e].assign(h.n, false);
        for (int v : h.edges[e]) member[e][v] = true;
    }
    int max_deg = 0;
    for (int e = 0; e < m; ++e) {
        int deg = 0;
        for (int f = 0; f < m; ++f) {
            if (f == e) continue;
            for (int v : h.edges[f]) {
                if (member[e][v]) {
                    ++deg;
                    break;
                }
            }
        }
        max_deg = std::max(max_deg, deg);
    }
    const int k = h.min_edge_size();
    return std::numbers::e * (max_deg + 1) <= std::ldexp(1.0, k - 1);
}

}  // namespace sepcycle
