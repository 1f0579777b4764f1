#include "sepcycle/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace sepcycle {

std::vector<Point2> GeomInstance::points2() const {
    std::vector<Point2> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back({p.x, p.y});
    return out;
}

bool GeomInstance::is_graph() const {
    return std::all_of(edges.begin(), edges.end(),
                       [](const std::vector<int>& e) { return e.size() == 2; });
}

bool GeomInstance::is_matching() const {
    if (!is_graph()) return false;
    std::vector<int> deg(points.size(), 0);
    for (const auto& e : edges)
        for (int v : e)
            if (++deg[v] > 1) return false;
    return true;
}

void GeomInstance::validate() const {
    if (dim != 2 && dim != 3) throw ValidationError("dim must be 2 or 3");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            throw ValidationError("points[" + std::to_string(i) + "]: non-finite coordinate");
        if (dim == 2 && p.z != 0.0)
            throw ValidationError("points[" + std::to_string(i) + "]: z coordinate in a 2D instance");
    }
    std::map<std::tuple<double, double, double>, int> seen;
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto key = std::make_tuple(points[i].x, points[i].y, points[i].z);
        auto [it, inserted] = seen.emplace(key, static_cast<int>(i));
        if (!inserted)
            throw ValidationError("points[" + std::to_string(i) + "] duplicates points[" +
                                  std::to_string(it->second) + "]");
    }
    Hypergraph::create(num_points(), edges);  // edge validation
    if (colors && static_cast<int>(colors->size()) != num_points())
        throw ValidationError("colors length does not match point count");
}

double GeomInstance::bbox_diagonal() const {
    if (points.empty()) return 0.0;
    Point3 lo = points[0], hi = points[0];
    for (const auto& p : points) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    return dist(lo, hi);
}

// ── JSON round trip ─────────────────────────────────────────────────

using ordered_json = nlohmann::ordered_json;

GeomInstance parse_instance(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        GeomInstance inst;
        if (!doc.is_object()) throw ParseError("document root must be an object");
        if (!doc.contains("dim") || !doc["dim"].is_number_integer())
            throw ParseError("missing integer field 'dim'");
        inst.dim = doc["dim"].get<int>();
        if (!doc.contains("points") || !doc["points"].is_array())
            throw ParseError("missing array field 'points'");
        for (const auto& row : doc["points"]) {
            if (!row.is_array() || static_cast<int>(row.size()) != inst.dim)
                throw ParseError("each point must be an array of dim coordinates");
            Point3 p;
            p.x = row[0].get<double>();
            p.y = row[1].get<double>();
            p.z = inst.dim == 3 ? row[2].get<double>() : 0.0;
            inst.points.push_back(p);
        }
        if (!doc.contains("edges") || !doc["edges"].is_array())
            throw ParseError("missing array field 'edges'");
        for (const auto& row : doc["edges"]) {
            if (!row.is_array()) throw ParseError("each edge must be an array of indices");
            std::vector<int> e;
            for (const auto& v : row) e.push_back(v.get<int>());
            inst.edges.push_back(std::move(e));
        }
        if (doc.contains("colors") && !doc["colors"].is_null()) {
            std::vector<VColor> colors;
            for (const auto& c : doc["colors"]) {
                const int v = c.get<int>();
                if (v != 0 && v != 1) throw ParseError("colors entries must be 0 (red) or 1 (blue)");
                colors.push_back(v == 0 ? VColor::Red : VColor::Blue);
            }
            inst.colors = std::move(colors);
        }
        if (doc.contains("metadata") && doc["metadata"].is_object()) {
            const auto& meta = doc["metadata"];
            if (meta.contains("name")) inst.meta.name = meta["name"].get<std::string>();
            if (meta.contains("seed") && !meta["seed"].is_null())
                inst.meta.seed = meta["seed"].get<std::uint64_t>();
        }
        inst.validate();
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed instance document: ") + e.what());
    }
}

std::string serialize_instance(const GeomInstance& inst) {
    ordered_json doc;
    doc["dim"] = inst.dim;
    ordered_json meta = ordered_json::object();
    meta["name"] = inst.meta.name;
    if (inst.meta.seed) meta["seed"] = *inst.meta.seed;
    doc["metadata"] = meta;
    ordered_json pts = ordered_json::array();
    for (const auto& p : inst.points) {
        ordered_json row = ordered_json::array();
        row.push_back(p.x);
        row.push_back(p.y);
        if (inst.dim == 3) row.push_back(p.z);
        pts.push_back(row);
    }
    doc["points"] = pts;
    doc["edges"] = inst.edges;
    if (inst.colors) {
        ordered_json colors = ordered_json::array();
        for (VColor c : *inst.colors) colors.push_back(c == VColor::Red ? 0 : 1);
        doc["colors"] = colors;
    }
    return doc.dump(2) + "\n";
}

GeomInstance load_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

void save_instance_file(const GeomInstance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << serialize_instance(inst);
}

// ── Generators ──────────────────────────────────────────────────────

double uniform01(std::uint64_t raw) { return static_cast<double>(raw >> 11) * 0x1.0p-53; }

namespace {

double next01(std::mt19937_64& rng) { return uniform01(rng()); }

}  // namespace

GeomInstance gen_grid_hard(int k) {
    if (k < 1) throw ValidationError("gen_grid_hard requires k >= 1");
    GeomInstance inst;
    inst.dim = 2;
    inst.meta.name = "grid-hard-k" + std::to_string(k);
    const int n = k * k;
    auto grid_coord = [&](int i) { return k == 1 ? 0.5 : static_cast<double>(i) / (k - 1); };
    for (int gy = 0; gy < k; ++gy)
        for (int gx = 0; gx < k; ++gx)
            inst.points.push_back({grid_coord(gx), grid_coord(gy), 0.0});
    // Right square shifted by 2 in x: gap between the unit squares is exactly 1.
    for (int i = 0; i < n; ++i) {
        const Point3 p = inst.points[i];
        inst.points.push_back({p.x + 2.0, p.y, 0.0});
    }
    for (int i = 0; i < n; ++i) inst.edges.push_back({i, n + i});
    inst.validate();
    return inst;
}

GeomInstance gen_convex(int n, std::uint64_t seed) {
    if (n < 1) throw ValidationError("gen_convex requires n >= 1");
    GeomInstance inst;
    inst.dim = 2;
    inst.meta.name = "convex-n" + std::to_string(n);
    inst.meta.seed = seed;
    std::mt19937_64 rng(seed);
    const int m = 2 * n;
    // Distinct angles on a rotated ellipse: any point set on a strictly convex
    // curve is in strictly convex position.
    std::vector<double> angles(m);
    for (int i = 0; i < m; ++i)
        angles[i] = 2.0 * std::numbers::pi * (i + 0.15 + 0.7 * next01(rng)) / m;
    const double a = 0.8 + 0.4 * next01(rng);
    const double b = 0.8 + 0.4 * next01(rng);
    const double rot = 2.0 * std::numbers::pi * next01(rng);
    const double cr = std::cos(rot), sr = std::sin(rot);
    for (int i = 0; i < m; ++i) {
        const double ex = a * std::cos(angles[i]);
        const double ey = b * std::sin(angles[i]);
        inst.points.push_back({cr * ex - sr * ey, sr * ex + cr * ey, 0.0});
    }
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    for (int i = m - 1; i > 0; --i) {  // Fisher-Yates with the seeded engine
        const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(idx[i], idx[j]);
    }
    for (int i = 0; i < n; ++i) inst.edges.push_back({idx[2 * i], idx[2 * i + 1]});
    inst.validate();
    return inst;
}

GeomInstance gen_infeasible_triangle() { return gen_odd_cycle(3); }

namespace {

GeomInstance gen_circle_cycle(int len, const char* kind) {
    GeomInstance inst;
    inst.dim = 2;
    inst.meta.name = std::string(kind) + "-cycle-" + std::to_string(len);
    for (int i = 0; i < len; ++i) {
        const double t = 2.0 * std::numbers::pi * i / len;
        inst.points.push_back({std::cos(t), std::sin(t), 0.0});
    }
    for (int i = 0; i < len; ++i) inst.edges.push_back({i, (i + 1) % len});
    inst.validate();
    return inst;
}

}  // namespace

GeomInstance gen_odd_cycle(int len) {
    if (len < 3 || len % 2 == 0) throw ValidationError("gen_odd_cycle requires odd len >= 3");
    return gen_circle_cycle(len, "odd");
}

GeomInstance gen_even_cycle(int len) {
    if (len < 4 || len % 2 != 0) throw ValidationError("gen_even_cycle requires even len >= 4");
    return gen_circle_cycle(len, "even");
}

GeomInstance gen_escape_square() {
    // Path v0-v1-v2-v3-v4. The minimum transversal square picks up {v1,v2,v3},
    // which mixes the two classes of the component, so any cycle confined to it
    // fails separation; the classes themselves are {v0,v2,v4} and {v1,v3}.
    GeomInstance inst;
    inst.dim = 2;
    inst.meta.name = "escape-square";
    inst.points = {
        {10.0, 10.0, 0.0},   // v0
        {0.0, 0.0, 0.0},     // v1
        {0.3, 0.0, 0.0},     // v2
        {10.0, -10.0, 0.0},  // v3
        {-10.0, -3.0, 0.0},  // v4
    };
    inst.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
    inst.validate();
    return inst;
}

GeomInstance gen_random_matching(int n, std::uint64_t seed, int dim) {
    if (n < 1) throw ValidationError("gen_random_matching requires n >= 1");
    GeomInstance inst;
    inst.dim = dim;
    inst.meta.name = "matching-n" + std::to_string(n);
    inst.meta.seed = seed;
    std::mt19937_64 rng(seed);
    while (static_cast<int>(inst.points.size()) < 2 * n) {
        Point3 p{next01(rng), next01(rng), dim == 3 ? next01(rng) : 0.0};
        bool dup = false;
        for (const auto& q : inst.points) dup = dup || q == p;
        if (!dup) inst.points.push_back(p);
    }
    for (int i = 0; i < n; ++i) inst.edges.push_back({2 * i, 2 * i + 1});
    inst.validate();
    return inst;
}

GeomInstance gen_random_graph(int n, int m, std::uint64_t seed, bool planted_bipartite, int dim) {
    if (n < 2) throw ValidationError("gen_random_graph requires n >= 2");
    GeomInstance inst;
    inst.dim = dim;
    inst.meta.name = std::string(planted_bipartite ? "bipartite" : "graph") + "-n" +
                     std::to_string(n) + "-m" + std::to_string(m);
    inst.meta.seed = seed;
    std::mt19937_64 rng(seed);
    while (static_cast<int>(inst.points.size()) < n) {
        Point3 p{next01(rng), next01(rng), dim == 3 ? next01(rng) : 0.0};
        bool dup = false;
        for (const auto& q : inst.points) dup = dup || q == p;
        if (!dup) inst.points.push_back(p);
    }
    std::vector<int> side(n, 0);
    if (planted_bipartite) {
        for (int i = 0; i < n; ++i) side[i] = static_cast<int>(rng() & 1u);
        side[0] = 0;
        // make sure both sides are nonempty
        bool has1 = std::any_of(side.begin(), side.end(), [](int s) { return s == 1; });
        if (!has1) side[n - 1] = 1;
    }
    std::set<std::pair<int, int>> used;
    int guard = 0;
    while (static_cast<int>(inst.edges.size()) < m && guard++ < 100 * m + 1000) {
        int u = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        if (u == v) continue;
        if (planted_bipartite && side[u] == side[v]) continue;
        auto key = std::minmax(u, v);
        if (used.insert({key.first, key.second}).second)
            inst.edges.push_back({key.first, key.second});
    }
    inst.validate();
    return inst;
}

std::vector<Point2> gen_convex_ring(int m, std::uint64_t seed) {
    if (m < 3) throw ValidationError("gen_convex_ring requires m >= 3");
    std::mt19937_64 rng(seed);
    std::vector<double> angles(m);
    for (int i = 0; i < m; ++i)
        angles[i] = 2.0 * std::numbers::pi * (i + 0.15 + 0.7 * next01(rng)) / m;
    const double a = 0.8 + 0.4 * next01(rng);
    const double b = 0.8 + 0.4 * next01(rng);
    const double rot = 2.0 * std::numbers::pi * next01(rng);
    const double cr = std::cos(rot), sr = std::sin(rot);
    std::vector<Point2> ring(m);
    for (int i = 0; i < m; ++i) {
        const double ex = a * std::cos(angles[i]);
        const double ey = b * std::sin(angles[i]);
        ring[i] = {cr * ex - sr * ey, sr * ex + cr * ey};
    }
    return ring;
}

GeomInstance gen_random_hypergraph(int n, int m, int max_edge_size, std::uint64_t seed) {
    if (n < 2 || max_edge_size < 2)
        throw ValidationError("gen_random_hypergraph requires n >= 2 and max_edge_size >= 2");
    GeomInstance inst;
    inst.dim = 2;
    inst.meta.name = "hypergraph-n" + std::to_string(n) + "-m" + std::to_string(m);
    inst.meta.seed = seed;
    std::mt19937_64 rng(seed);
    while (static_cast<int>(inst.points.size()) < n) {
        Point3 p{next01(rng), next01(rng), 0.0};
        bool dup = false;
        for (const auto& q : inst.points) dup = dup || q == p;
        if (!dup) inst.points.push_back(p);
    }
    for (int e = 0; e < m; ++e) {
        const int cap = std::min(max_edge_size, n);
        const int size = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(cap - 1));
        std::vector<int> edge;
        while (static_cast<int>(edge.size()) < size) {
            int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            if (std::find(edge.begin(), edge.end(), v) == edge.end()) edge.push_back(v);
        }
        inst.edges.push_back(std::move(edge));
    }
    inst.validate();
    return inst;
}

}  // namespace sepcycle
