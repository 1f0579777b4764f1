#include "sepcycle/poly3d.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "sepcycle/approx.hpp"
#include "sepcycle/cycle2d.hpp"

namespace sepcycle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ── Monotone path and detours ───────────────────────────────────────

std::vector<Point3> MonotonePath3::polyline() const {
    std::vector<Point3> out;
    if (vertices.empty()) return out;
    out.push_back(vertices[0]);
    for (std::size_t e = 0; e + 1 < vertices.size(); ++e) {
        if (e < bends.size() && bends[e]) out.push_back(*bends[e]);
        out.push_back(vertices[e + 1]);
    }
    return out;
}

double MonotonePath3::length() const {
    const auto pts = polyline();
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) len += dist(pts[i], pts[i + 1]);
    return len;
}

MonotonePath3 monotone_path_3d(const std::vector<Point3>& reds) {
    MonotonePath3 path;
    const int n = static_cast<int>(reds.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;

    bool collision = false;
    {
        std::vector<double> xs;
        for (const auto& p : reds) xs.push_back(p.x);
        std::sort(xs.begin(), xs.end());
        collision = std::adjacent_find(xs.begin(), xs.end()) != xs.end();
    }
    double eta = 0.0;
    if (collision) {
        const auto [pair, diam] = diameter_pair(reds);
        (void)pair;
        eta = 1e-7 * std::max(diam, 1e-30);
    }
    auto key = [&](int i) { return reds[i].x + eta * reds[i].y + eta * eta * reds[i].z; };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double ka = key(a), kb = key(b);
        return ka < kb || (ka == kb && a < b);
    });
    for (int i : order) path.vertices.push_back(reds[i]);
    if (n > 1) path.bends.assign(n - 1, std::nullopt);
    return path;
}

namespace {

// Detour apex for an edge with incident blue points: displaced perpendicular to the
// edge at the mean foot, direction sampled to maximize clearance from all points.
std::optional<Point3> plan_detour(const Point3& a, const Point3& b,
                                  const std::vector<Point3>& incident,
                                  const std::vector<Point3>& all_blue,
                                  const std::vector<Point3>& other_points, double tol,
                                  bool keep_x_monotone) {
    const Point3 d = b - a;
    const double len = norm(d);
    if (len <= tol) return std::nullopt;
    const Point3 dhat = d * (1.0 / len);

    double t_sum = 0.0;
    for (const Point3& p : incident) t_sum += std::clamp(dot(p - a, dhat) / len, 0.0, 1.0);
    const double t_apex = incident.empty() ? 0.5 : t_sum / static_cast<double>(incident.size());
    const Point3 foot = a + dhat * (t_apex * len);

    // Perpendicular basis: start from the axis least aligned with the edge.
    Point3 axis{1.0, 0.0, 0.0};
    double align = std::abs(dhat.x);
    if (std::abs(dhat.y) < align) {
        axis = {0.0, 1.0, 0.0};
        align = std::abs(dhat.y);
    }
    if (std::abs(dhat.z) < align) axis = {0.0, 0.0, 1.0};
    Point3 e1 = normalized(axis - dhat * dot(axis, dhat));
    if (norm(e1) == 0.0) e1 = normalized(cross(dhat, Point3{0.0, 1.0, 0.0}));
    const Point3 e2 = cross(dhat, e1);

    // Base displacement: a quarter of the smallest positive clearance around the edge.
    double clearance = kInf;
    for (const Point3& p : all_blue) {
        const double dp = dist_point_segment(p, {a, b});
        if (dp > tol) clearance = std::min(clearance, dp);
    }
    for (const Point3& p : other_points) {
        const double dp = dist_point_segment(p, {a, b});
        if (dp > tol) clearance = std::min(clearance, dp);
    }
    double base = std::isfinite(clearance) ? clearance / 4.0 : len / 4.0;
    base = std::min(base, len / 4.0);
    if (base <= tol) return std::nullopt;

    // Margin for x-monotonicity: the apex x must stay strictly between the
    // endpoint x coordinates.
    const double margin_x = std::min(foot.x - std::min(a.x, b.x), std::max(a.x, b.x) - foot.x);
    for (int attempt = 0; attempt < 8; ++attempt, base /= 2.0) {
        int best_dir = -1;
        double best_score = tol;
        for (int k = 0; k < 16; ++k) {
            const double ang = 2.0 * std::numbers::pi * k / 16.0;
            const Point3 w = e1 * std::cos(ang) + e2 * std::sin(ang);
            if (keep_x_monotone && std::abs(w.x) * base >= margin_x) continue;
            const Point3 apex = foot + w * base;
            double score = kInf;
            for (const Point3& p : all_blue) {
                score = std::min(score, dist_point_segment(p, {a, apex}));
                score = std::min(score, dist_point_segment(p, {apex, b}));
            }
            for (const Point3& p : other_points) {
                score = std::min(score, dist_point_segment(p, {a, apex}));
                score = std::min(score, dist_point_segment(p, {apex, b}));
            }
            if (score > best_score) {
                best_score = score;
                best_dir = k;
            }
        }
        if (best_dir >= 0) {
            const double ang = 2.0 * std::numbers::pi * best_dir / 16.0;
            const Point3 w = e1 * std::cos(ang) + e2 * std::sin(ang);
            return foot + w * base;
        }
    }
    return std::nullopt;
}

}  // namespace

MonotonePath3 avoid_blue_3d(const MonotonePath3& path, const std::vector<Point3>& blue,
                            double tol) {
    MonotonePath3 out = path;
    const int n = static_cast<int>(path.vertices.size());
    if (n < 2) return out;
    out.bends.assign(n - 1, std::nullopt);

    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = path.vertices[i].x;

    std::vector<std::vector<Point3>> incident(n - 1);
    for (const Point3& b : blue) {
        // Binary search for the candidate edge; equal-x runs make the neighbors
        // candidates too.
        const auto it = std::upper_bound(xs.begin(), xs.end(), b.x);
        const int idx = static_cast<int>(it - xs.begin()) - 1;
        for (int e = std::max(0, idx - 1); e <= std::min(n - 2, idx + 1); ++e) {
            if (dist_point_segment(b, {path.vertices[e], path.vertices[e + 1]}) <= tol)
                incident[e].push_back(b);
        }
    }

    for (int e = 0; e < n - 1; ++e) {
        if (incident[e].empty()) continue;
        std::vector<Point3> others;
        for (int v = 0; v < n; ++v)
            if (v != e && v != e + 1) others.push_back(path.vertices[v]);
        const auto apex = plan_detour(path.vertices[e], path.vertices[e + 1], incident[e], blue,
                                      others, tol, /*keep_x_monotone=*/true);
        if (!apex) throw DegenerateGeometry("detour displacement underflows tolerance");
        out.bends[e] = apex;
    }
    return out;
}

std::vector<Point3> bend_polyline_3d(const std::vector<Point3>& polyline,
                                     const std::vector<Point3>& blue, double tol) {
    std::vector<Point3> out;
    const int n = static_cast<int>(polyline.size());
    if (n == 0) return out;
    out.push_back(polyline[0]);
    for (int e = 0; e + 1 < n; ++e) {
        const Point3 a = polyline[e];
        const Point3 b = polyline[e + 1];
        std::vector<Point3> incident;
        for (const Point3& p : blue)
            if (dist_point_segment(p, {a, b}) <= tol) incident.push_back(p);
        if (!incident.empty()) {
            std::vector<Point3> others;
            for (int v = 0; v < n; ++v)
                if (v != e && v != e + 1) others.push_back(polyline[v]);
            const auto apex =
                plan_detour(a, b, incident, blue, others, tol, /*keep_x_monotone=*/false);
            if (!apex) throw DegenerateGeometry("detour displacement underflows tolerance");
            out.push_back(*apex);
        }
        out.push_back(b);
    }
    return out;
}

// ── Triangle mesh ───────────────────────────────────────────────────

bool TriMesh::watertight_manifold(std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (faces.empty()) return fail("no faces");
    std::map<std::pair<int, int>, int> forward;  // directed edge -> count
    for (const auto& f : faces) {
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) return fail("degenerate face");
        for (int k = 0; k < 3; ++k) {
            const int a = f[k], b = f[(k + 1) % 3];
            if (a < 0 || b < 0 || a >= static_cast<int>(vertices.size()) ||
                b >= static_cast<int>(vertices.size()))
                return fail("face index out of range");
            if (++forward[{a, b}] > 1) return fail("directed edge repeated");
        }
    }
    for (const auto& [edge, cnt] : forward) {
        (void)cnt;
        if (forward.find({edge.second, edge.first}) == forward.end())
            return fail("boundary edge (no opposite half-edge)");
    }
    // Face connectivity through shared edges.
    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
        const auto& f = faces[fi];
        for (int k = 0; k < 3; ++k) {
            const auto key = std::minmax(f[k], f[(k + 1) % 3]);
            by_edge[{key.first, key.second}].push_back(fi);
        }
    }
    for (const auto& [edge, fs] : by_edge) {
        (void)edge;
        if (fs.size() != 2) return fail("edge not shared by exactly two faces");
    }
    std::vector<int> comp(faces.size(), -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        const int fi = stack.back();
        stack.pop_back();
        const auto& f = faces[fi];
        for (int k = 0; k < 3; ++k) {
            const auto key = std::minmax(f[k], f[(k + 1) % 3]);
            for (int other : by_edge[{key.first, key.second}]) {
                if (comp[other] == -1) {
                    comp[other] = 0;
                    stack.push_back(other);
                }
            }
        }
    }
    if (std::find(comp.begin(), comp.end(), -1) != comp.end())
        return fail("mesh has several components");
    return true;
}

long TriMesh::euler_characteristic() const {
    std::map<std::pair<int, int>, int> edges;
    for (const auto& f : faces)
        for (int k = 0; k < 3; ++k) {
            const auto key = std::minmax(f[k], f[(k + 1) % 3]);
            edges[{key.first, key.second}] = 1;
        }
    return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) +
           static_cast<long>(faces.size());
}

double TriMesh::signed_volume() const {
    double vol = 0.0;
    for (const auto& f : faces) {
        const Point3& a = vertices[f[0]];
        const Point3& b = vertices[f[1]];
        const Point3& c = vertices[f[2]];
        vol += dot(a, cross(b, c));
    }
    return vol / 6.0;
}

double TriMesh::creased_edge_length() const {
    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi)
        for (int k = 0; k < 3; ++k) {
            const auto key = std::minmax(faces[fi][k], faces[fi][(k + 1) % 3]);
            by_edge[{key.first, key.second}].push_back(fi);
        }
    auto face_normal = [&](int fi) {
        const auto& f = faces[fi];
        return normalized(cross(vertices[f[1]] - vertices[f[0]], vertices[f[2]] - vertices[f[0]]));
    };
    double total = 0.0;
    for (const auto& [edge, fs] : by_edge) {
        if (fs.size() != 2) continue;
        const Point3 n0 = face_normal(fs[0]);
        const Point3 n1 = face_normal(fs[1]);
        if (dot(n0, n1) < 1.0 - 1e-7) total += dist(vertices[edge.first], vertices[edge.second]);
    }
    return total;
}

bool TriMesh::contains(const Point3& p) const {
    // Fixed irrational-ish ray direction dodges edge-on hits for generic meshes.
    const Point3 dir = normalized({0.5488135039273248, 0.7151893663724195, 0.4236547993389047});
    int hits = 0;
    for (const auto& f : faces) {
        const Point3& a = vertices[f[0]];
        const Point3 e1 = vertices[f[1]] - a;
        const Point3 e2 = vertices[f[2]] - a;
        const Point3 h = cross(dir, e2);
        const double det = dot(e1, h);
        if (std::abs(det) < 1e-14) continue;
        const double inv = 1.0 / det;
        const Point3 s = p - a;
        const double u = inv * dot(s, h);
        if (u < 0.0 || u > 1.0) continue;
        const Point3 q = cross(s, e1);
        const double v = inv * dot(dir, q);
        if (v < 0.0 || u + v > 1.0) continue;
        const double t = inv * dot(e2, q);
        if (t > 1e-12) ++hits;
    }
    return hits % 2 == 1;
}

// ── Tube construction ───────────────────────────────────────────────

namespace {

// Split joints sharper than 120 degrees by inserting an anti-bisector vertex.
std::vector<Point3> split_sharp_joints(std::vector<Point3> pts, double delta, double tol) {
    for (int pass = 0; pass < 3; ++pass) {
        bool changed = false;
        std::vector<Point3> out;
        out.push_back(pts[0]);
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
            out.push_back(pts[i]);
            const Point3 d1 = normalized(pts[i] - pts[i - 1]);
            const Point3 d2 = normalized(pts[i + 1] - pts[i]);
            if (dot(d1, d2) < -0.5 + 1e-12) {  // turn sharper than 120 degrees
                Point3 bis = d1 + d2;
                Point3 dir;
                if (norm(bis) > 1e-9) {
                    dir = normalized(bis) * -1.0;
                } else {  // straight reversal: any perpendicular works
                    Point3 axis{0.0, 0.0, 1.0};
                    if (std::abs(dot(axis, d1)) > 0.9) axis = {0.0, 1.0, 0.0};
                    dir = normalized(cross(d1, axis));
                }
                const double h = std::min({delta, dist(pts[i - 1], pts[i]) / 4.0,
                                           dist(pts[i], pts[i + 1]) / 4.0});
                if (h <= tol) throw DegenerateGeometry("joint split displacement underflow");
                out.push_back(pts[i] + dir * h);
                changed = true;
            }
        }
        out.push_back(pts.back());
        pts = std::move(out);
        if (!changed) break;
    }
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const Point3 d1 = normalized(pts[i] - pts[i - 1]);
        const Point3 d2 = normalized(pts[i + 1] - pts[i]);
        if (dot(d1, d2) < -0.5 - 1e-6)
            throw DegenerateGeometry("sharp tube joint survived splitting");
    }
    return pts;
}

TriMesh cube_mesh(const Point3& c, double delta) {
    TriMesh mesh;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1})
                mesh.vertices.push_back(c + Point3{sx * delta, sy * delta, sz * delta});
    auto idx = [&](int sx, int sy, int sz) { return ((sx + 1) / 2) * 4 + ((sy + 1) / 2) * 2 + (sz + 1) / 2; };
    auto quad = [&](int a, int b, int cc, int d) {
        mesh.faces.push_back({a, b, cc});
        mesh.faces.push_back({a, cc, d});
    };
    quad(idx(-1, -1, -1), idx(-1, -1, 1), idx(-1, 1, 1), idx(-1, 1, -1));   // x = -d
    quad(idx(1, -1, -1), idx(1, 1, -1), idx(1, 1, 1), idx(1, -1, 1));      // x = +d
    quad(idx(-1, -1, -1), idx(1, -1, -1), idx(1, -1, 1), idx(-1, -1, 1));  // y = -d
    quad(idx(-1, 1, -1), idx(-1, 1, 1), idx(1, 1, 1), idx(1, 1, -1));      // y = +d
    quad(idx(-1, -1, -1), idx(-1, 1, -1), idx(1, 1, -1), idx(1, -1, -1));  // z = -d
    quad(idx(-1, -1, 1), idx(1, -1, 1), idx(1, 1, 1), idx(-1, 1, 1));      // z = +d
    return mesh;
}

}  // namespace

TubePolyhedron tube_polyhedron(const std::vector<Point3>& polyline, double delta, double tol) {
    if (polyline.empty()) throw DegenerateGeometry("empty skeleton");
    if (delta <= 2.0 * tol) throw DegenerateGeometry("tube half-width underflows tolerance");

    // Drop consecutive duplicates.
    std::vector<Point3> pts;
    for (const Point3& p : polyline)
        if (pts.empty() || dist(pts.back(), p) > tol) pts.push_back(p);

    TubePolyhedron tube;
    tube.delta = delta;
    if (pts.size() == 1) {
        tube.skeleton = pts;
        tube.mesh = cube_mesh(pts[0], delta);
        if (tube.mesh.signed_volume() < 0.0)
            for (auto& f : tube.mesh.faces) std::swap(f[1], f[2]);
        tube.perimeter = tube.mesh.creased_edge_length();
        return tube;
    }

    pts = split_sharp_joints(std::move(pts), delta, tol);
    tube.skeleton = pts;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        tube.skeleton_length += dist(pts[i], pts[i + 1]);

    const int k = static_cast<int>(pts.size());
    std::vector<Point3> dirs(k - 1);
    for (int i = 0; i + 1 < k; ++i) {
        dirs[i] = normalized(pts[i + 1] - pts[i]);
        if (norm(pts[i + 1] - pts[i]) <= tol) throw DegenerateGeometry("degenerate tube segment");
    }

    // Initial frame perpendicular to the first direction.
    Point3 axis{1.0, 0.0, 0.0};
    double best = std::abs(dirs[0].x);
    if (std::abs(dirs[0].y) < best) {
        axis = {0.0, 1.0, 0.0};
        best = std::abs(dirs[0].y);
    }
    if (std::abs(dirs[0].z) < best) axis = {0.0, 0.0, 1.0};
    Point3 n1 = normalized(axis - dirs[0] * dot(axis, dirs[0]));
    Point3 n2 = cross(dirs[0], n1);

    // Stations: start cap, one per interior joint, end cap. Corner labels are
    // fixed: (+n1+n2), (-n1+n2), (-n1-n2), (+n1-n2).
    std::vector<std::array<Point3, 4>> stations;
    const Point3 c0 = pts[0] - dirs[0] * delta;
    std::array<Point3, 4> cur = {c0 + n1 * delta + n2 * delta, c0 - n1 * delta + n2 * delta,
                                 c0 - n1 * delta - n2 * delta, c0 + n1 * delta - n2 * delta};
    stations.push_back(cur);

    for (int i = 1; i < k; ++i) {
        const Point3 din = dirs[i - 1];
        if (i < k - 1) {
            // Miter plane of the joint: the cut shared by both prisms, i.e. the
            // mirror mapping din to -dout. Joint splitting keeps |din+dout| >= 1.
            const Point3 dout = dirs[i];
            const Point3 m = normalized(din + dout);
            const double denom = dot(din, m);
            if (std::abs(denom) < 1e-12) throw DegenerateGeometry("tube joint plane degenerate");
            for (int j = 0; j < 4; ++j) {
                const double t = dot(pts[i] - cur[j], m) / denom;
                if (t <= tol) throw DegenerateGeometry("tube sections fold back");
                cur[j] = cur[j] + din * t;
            }
            stations.push_back(cur);
        } else {
            const Point3 ce = pts[k - 1] + din * delta;
            for (int j = 0; j < 4; ++j) {
                const double t = dot(ce - cur[j], din);
                if (t <= tol) throw DegenerateGeometry("tube sections fold back");
                cur[j] = cur[j] + din * t;
            }
            stations.push_back(cur);
        }
    }

    TriMesh& mesh = tube.mesh;
    for (const auto& st : stations)
        for (const Point3& p : st) mesh.vertices.push_back(p);
    const int S = static_cast<int>(stations.size());
    auto vid = [&](int station, int corner) { return 4 * station + corner; };
    auto quad = [&](int a, int b, int c, int d) {
        mesh.faces.push_back({a, b, c});
        mesh.faces.push_back({a, c, d});
    };
    for (int s = 0; s + 1 < S; ++s)
        for (int j = 0; j < 4; ++j)
            quad(vid(s, j), vid(s + 1, j), vid(s + 1, (j + 1) % 4), vid(s, (j + 1) % 4));
    quad(vid(0, 0), vid(0, 1), vid(0, 2), vid(0, 3));          // start cap
    quad(vid(S - 1, 3), vid(S - 1, 2), vid(S - 1, 1), vid(S - 1, 0));  // end cap
    if (mesh.signed_volume() < 0.0)
        for (auto& f : mesh.faces) std::swap(f[1], f[2]);

    tube.perimeter = mesh.creased_edge_length();
    return tube;
}

// ── Builders ────────────────────────────────────────────────────────

namespace {

double polyline_clearance(const std::vector<Point3>& pts, const std::vector<Point3>& blue) {
    double c = kInf;
    if (pts.size() == 1) {
        for (const Point3& b : blue) c = std::min(c, dist(pts[0], b));
        return c;
    }
    for (const Point3& b : blue)
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            c = std::min(c, dist_point_segment(b, {pts[i], pts[i + 1]}));
    return c;
}

double bbox_diag3(const std::vector<Point3>& pts) {
    if (pts.empty()) return 0.0;
    Point3 lo = pts[0], hi = pts[0];
    for (const auto& p : pts) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    return dist(lo, hi);
}

// Tube around the polyline separating reds (inside) from blues (outside), halving
// delta on failures.
TubePolyhedron tube_separating(const std::vector<Point3>& polyline,
                               const std::vector<Point3>& reds,
                               const std::vector<Point3>& blues) {
    const double clearance = polyline_clearance(polyline, blues);
    double delta = std::isfinite(clearance) ? clearance / 8.0
                                            : std::max(bbox_diag3(polyline), 1.0) / 8.0;
    for (int attempt = 0; attempt < 8; ++attempt, delta /= 2.0) {
        TubePolyhedron tube;
        try {
            tube = tube_polyhedron(polyline, delta);
        } catch (const DegenerateGeometry&) {
            continue;
        }
        bool ok = true;
        for (const Point3& r : reds)
            if (!tube.mesh.contains(r)) ok = false;
        for (const Point3& b : blues)
            if (tube.mesh.contains(b)) ok = false;
        if (ok) return tube;
    }
    throw DegenerateGeometry("failed to realize a separating tube");
}

}  // namespace

TubePolyhedron build_separating_polyhedron(const GeomInstance& inst) {
    if (inst.dim != 3) throw ValidationError("build_separating_polyhedron expects a 3D instance");
    if (!inst.is_graph()) throw NotAGraph("build_separating_polyhedron requires a graph");
    const BipartitionResult bip = bipartition(inst.hypergraph());
    if (!bip.feasible()) throw Infeasible("instance contains an odd cycle", bip.odd_cycle);

    std::vector<Point3> reds, blues;
    for (int v = 0; v < inst.num_points(); ++v)
        (bip.coloring->color[v] == VColor::Red ? reds : blues).push_back(inst.points[v]);
    if (reds.empty()) throw InfeasibleColoring("coloring has no red vertex");

    MonotonePath3 path = monotone_path_3d(reds);
    path = avoid_blue_3d(path, blues);
    return tube_separating(path.polyline(), reds, blues);
}

FewPath3 few_path_3d(const std::vector<Point3>& pts, double extent_x, double extent_y,
                     double extent_z) {
    FewPath3 out;
    const int n = static_cast<int>(pts.size());
    if (n == 0) return out;
    out.slabs = std::max(1, static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n)))));
    const double w = extent_x > 0.0 ? extent_x / out.slabs : 1.0;

    auto slab_of = [&](double x) {
        const int idx = static_cast<int>(std::ceil(x / w)) - 1;  // boundary to the lower slab
        return std::clamp(idx, 0, out.slabs - 1);
    };
    std::vector<std::vector<int>> slabs(out.slabs);
    for (int i = 0; i < n; ++i) slabs[slab_of(pts[i].x)].push_back(i);

    for (auto& members : slabs) {
        if (members.empty()) continue;
        std::vector<Point2> yz;
        yz.reserve(members.size());
        for (int i : members) yz.push_back({pts[i].y, pts[i].z});
        const FewPath fp = few_path_2d(yz, extent_y, extent_z);
        std::vector<int> ordered;
        ordered.reserve(members.size());
        for (int j : fp.order) ordered.push_back(members[j]);
        if (!out.order.empty()) {  // chain to the nearer endpoint of this slab's path
            const Point3& tail = pts[out.order.back()];
            if (dist(tail, pts[ordered.back()]) < dist(tail, pts[ordered.front()]))
                std::reverse(ordered.begin(), ordered.end());
        }
        out.order.insert(out.order.end(), ordered.begin(), ordered.end());
    }
    for (int i = 0; i + 1 < n; ++i) out.length += dist(pts[out.order[i]], pts[out.order[i + 1]]);
    return out;
}

DiamSelection3 min_diam_selection_3d(const GeomInstance& matching, int limit) {
    if (matching.dim != 3) throw ValidationError("min_diam_selection_3d expects a 3D instance");
    if (!matching.is_matching()) throw NotAGraph("min_diam_selection_3d requires a matching");
    const int n = static_cast<int>(matching.edges.size());
    if (n > limit)
        throw TooLarge("min_diam_selection_3d limited to " + std::to_string(limit) + " pairs");

    DiamSelection3 best;
    best.diameter = kInf;
    std::vector<Point3> chosen(n);
    std::vector<int> pick(n);
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        for (int i = 0; i < n; ++i) {
            pick[i] = matching.edges[i][(mask >> i) & 1ull];
            chosen[i] = matching.points[pick[i]];
        }
        double diam = 0.0;
        for (int i = 0; i < n && diam < best.diameter; ++i)
            for (int j = i + 1; j < n; ++j) diam = std::max(diam, dist(chosen[i], chosen[j]));
        if (diam < best.diameter) {
            best.diameter = diam;
            best.selection = pick;
        }
    }
    best.lower_bound = 2.0 * best.diameter;
    return best;
}

Sqrt3dResult sqrt_approx_3d(const GeomInstance& inst) {
    if (inst.dim != 3) throw ValidationError("sqrt_approx_3d expects a 3D instance");
    if (!inst.is_graph()) throw NotAGraph("sqrt_approx_3d requires a graph instance");
    if (inst.edges.empty()) throw ValidationError("sqrt_approx_3d requires at least one edge");
    const BipartitionResult bip = bipartition(inst.hypergraph());
    if (!bip.feasible()) throw Infeasible("instance contains an odd cycle", bip.odd_cycle);
    const Coloring& base = *bip.coloring;

    const int n = inst.num_points();
    const auto& pts = inst.points;
    int ncomp = 0;
    for (int c : base.component) ncomp = std::max(ncomp, c + 1);
    std::vector<std::vector<int>> comp_red(ncomp), comp_blue(ncomp);
    for (int v = 0; v < n; ++v)
        (base.color[v] == VColor::Red ? comp_red : comp_blue)[base.component[v]].push_back(v);

    const double sqrt3 = std::sqrt(3.0);
    const double tol = geometry_tolerance();

    Sqrt3dResult result;
    double best_per = kInf;
    std::vector<char> red_flag(n);

    for (int ai = 0; ai < n; ++ai) {
        for (int bi = ai + 1; bi < n; ++bi) {
            const Point3 a = pts[ai], b = pts[bi];
            const double len = dist(a, b);
            const Point3 mid = (a + b) * 0.5;
            const Point3 u = normalized(b - a);
            Point3 axis{1.0, 0.0, 0.0};
            double al = std::abs(u.x);
            if (std::abs(u.y) < al) {
                axis = {0.0, 1.0, 0.0};
                al = std::abs(u.y);
            }
            if (std::abs(u.z) < al) axis = {0.0, 0.0, 1.0};
            const Point3 v = normalized(axis - u * dot(axis, u));
            const Point3 w = cross(u, v);
            auto in_box = [&](const Point3& p) {
                const Point3 d = p - mid;
                return std::abs(dot(d, u)) <= len / 2.0 + tol &&
                       std::abs(dot(d, v)) <= sqrt3 * len / 2.0 + tol &&
                       std::abs(dot(d, w)) <= sqrt3 * len / 2.0 + tol;
            };

            Candidate3Outcome outcome;
            outcome.a = ai;
            outcome.b = bi;
            bool abandoned = false;
            std::fill(red_flag.begin(), red_flag.end(), 0);
            for (int c = 0; c < ncomp && !abandoned; ++c) {
                auto all_in = [&](const std::vector<int>& side) {
                    return std::all_of(side.begin(), side.end(),
                                       [&](int vtx) { return in_box(pts[vtx]); });
                };
                const std::vector<int>* reds = &comp_red[c];
                if (!all_in(comp_red[c])) {
                    if (all_in(comp_blue[c]))
                        reds = &comp_blue[c];
                    else {
                        abandoned = true;
                        break;
                    }
                }
                for (int vtx : *reds) red_flag[vtx] = 1;
            }
            if (abandoned || std::none_of(red_flag.begin(), red_flag.end(),
                                          [](char f) { return f != 0; })) {
                outcome.abandoned = true;
                result.trace.push_back(outcome);
                continue;
            }

            std::vector<Point3> reds, blues, frame;
            for (int vtx = 0; vtx < n; ++vtx) {
                if (red_flag[vtx]) {
                    reds.push_back(pts[vtx]);
                    const Point3 d = pts[vtx] - mid;
                    frame.push_back({dot(d, u) + len / 2.0, dot(d, v) + sqrt3 * len / 2.0,
                                     dot(d, w) + sqrt3 * len / 2.0});
                } else {
                    blues.push_back(pts[vtx]);
                }
            }

            const FewPath3 fp = few_path_3d(frame, len, sqrt3 * len, sqrt3 * len);
            std::vector<Point3> polyline;
            polyline.reserve(reds.size());
            for (int idx : fp.order) polyline.push_back(reds[idx]);
            TubePolyhedron tube;
            try {
                polyline = bend_polyline_3d(polyline, blues, tol);
                tube = tube_separating(polyline, reds, blues);
            } catch (const DegenerateGeometry&) {
                outcome.abandoned = true;
                result.trace.push_back(outcome);
                continue;
            }
            outcome.perimeter = tube.perimeter;
            result.trace.push_back(outcome);
            if (outcome.perimeter < best_per) {
                best_per = outcome.perimeter;
                result.tube = std::move(tube);
                result.best_a = ai;
                result.best_b = bi;
            }
        }
    }
    if (!std::isfinite(best_per))
        throw Error("no usable candidate pair (unreachable for feasible inputs)");
    return result;
}

// ── Mesh export ─────────────────────────────────────────────────────

namespace {

std::string fmt_double(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string mesh_to_stl(const TriMesh& mesh, const std::string& name) {
    std::ostringstream out;
    out << "solid " << name << "\n";
    for (const auto& f : mesh.faces) {
        const Point3& a = mesh.vertices[f[0]];
        const Point3& b = mesh.vertices[f[1]];
        const Point3& c = mesh.vertices[f[2]];
        const Point3 nrm = normalized(cross(b - a, c - a));
        out << "  facet normal " << fmt_double(nrm.x) << " " << fmt_double(nrm.y) << " "
            << fmt_double(nrm.z) << "\n";
        out << "    outer loop\n";
        for (int idx : f) {
            const Point3& p = mesh.vertices[idx];
            out << "      vertex " << fmt_double(p.x) << " " << fmt_double(p.y) << " "
                << fmt_double(p.z) << "\n";
        }
        out << "    endloop\n  endfacet\n";
    }
    out << "endsolid " << name << "\n";
    return out.str();
}

std::string mesh_to_off(const TriMesh& mesh) {
    std::ostringstream out;
    out << "OFF\n" << mesh.vertices.size() << " " << mesh.faces.size() << " 0\n";
    for (const Point3& p : mesh.vertices)
        out << fmt_double(p.x) << " " << fmt_double(p.y) << " " << fmt_double(p.z) << "\n";
    for (const auto& f : mesh.faces) out << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
    return out.str();
}

}  // namespace sepcycle
