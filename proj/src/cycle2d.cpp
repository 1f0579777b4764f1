#include "sepcycle/cycle2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sepcycle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<Segment> PlaneTree::edge_geometry(int e) const {
    const auto& [u, v] = edges[e];
    const Point2 a = vertices[u];
    const Point2 b = vertices[v];
    if (e < static_cast<int>(bends.size()) && bends[e]) {
        const Point2 m = *bends[e];
        return {{a, m}, {m, b}};
    }
    return {{a, b}};
}

double PlaneTree::total_length() const {
    double len = 0.0;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        for (const Segment& s : edge_geometry(e)) len += dist(s.a, s.b);
    return len;
}

double PlaneTree::bbox_diagonal() const {
    if (vertices.empty()) return 0.0;
    Point2 lo = vertices[0], hi = vertices[0];
    auto extend = [&](const Point2& p) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    };
    for (const Point2& p : vertices) extend(p);
    for (const auto& b : bends)
        if (b) extend(*b);
    return dist(lo, hi);
}

PlaneTree mst_tree(const std::vector<Point2>& points) {
    PlaneTree tree;
    tree.vertices = points;
    const int n = static_cast<int>(points.size());
    if (n <= 1) return tree;
    std::vector<double> key(n, kInf);
    std::vector<int> parent(n, -1);
    std::vector<bool> done(n, false);
    key[0] = 0.0;
    for (int iter = 0; iter < n; ++iter) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!done[v] && (best == -1 || key[v] < key[best])) best = v;
        done[best] = true;
        if (parent[best] != -1) tree.edges.emplace_back(parent[best], best);
        for (int v = 0; v < n; ++v) {
            if (done[v]) continue;
            const double d = dist(points[best], points[v]);
            if (d < key[v]) {
                key[v] = d;
                parent[v] = best;
            }
        }
    }
    tree.bends.assign(tree.edges.size(), std::nullopt);
    return tree;
}

PlaneTree path_tree(const std::vector<Point2>& points, const std::vector<int>& order) {
    PlaneTree tree;
    tree.vertices = points;
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        tree.edges.emplace_back(order[i], order[i + 1]);
    tree.bends.assign(tree.edges.size(), std::nullopt);
    return tree;
}

double ClearanceProfile::min_positive_clearance(double tol) const {
    double q = kInf;
    for (double d : delta1) q = std::min(q, d);
    for (double d : delta2)
        if (d > tol) q = std::min(q, d);
    for (double d : delta3)
        if (std::isfinite(d)) q = std::min(q, d);
    return q;
}

ClearanceProfile clearance_profile(const PlaneTree& tree, const std::vector<Point2>& blue,
                                   double tol) {
    ClearanceProfile prof;
    prof.delta1.assign(tree.vertices.size(), kInf);
    for (std::size_t v = 0; v < tree.vertices.size(); ++v)
        for (const Point2& b : blue)
            prof.delta1[v] = std::min(prof.delta1[v], dist(tree.vertices[v], b));

    const double cap = tree.bbox_diagonal();
    prof.delta2.assign(tree.edges.size(), kInf);
    prof.delta3.assign(tree.edges.size(), kInf);
    for (std::size_t e = 0; e < tree.edges.size(); ++e) {
        const auto segs = tree.edge_geometry(static_cast<int>(e));
        for (const Point2& b : blue) {
            double d = kInf;
            for (const Segment& s : segs) d = std::min(d, dist_point_segment(b, s));
            prof.delta2[e] = std::min(prof.delta2[e], d);
            if (d > tol && d < cap) prof.delta3[e] = std::min(prof.delta3[e], d);
        }
        if (blue.empty()) prof.delta2[e] = kInf;
    }
    return prof;
}

namespace {

// Minimum distance from a candidate detour to the blue points.
double detour_blue_clearance(const Point2& a, const Point2& apex, const Point2& b,
                             const std::vector<Point2>& blue) {
    double d = kInf;
    for (const Point2& p : blue) {
        d = std::min(d, dist_point_segment(p, {a, apex}));
        d = std::min(d, dist_point_segment(p, {apex, b}));
    }
    return d;
}

}  // namespace

PlaneTree bend_edges(const PlaneTree& tree, const std::vector<Point2>& blue,
                     const ClearanceProfile& profile, double tol) {
    PlaneTree out = tree;
    out.bends.assign(tree.edges.size(), std::nullopt);

    // Global displacement cap from the pre-bend profile.
    double q_pre = kInf;
    for (double d : profile.delta1) q_pre = std::min(q_pre, d);
    for (double d : profile.delta2)
        if (d > tol) q_pre = std::min(q_pre, d);
    for (double d : profile.delta3)
        if (std::isfinite(d)) q_pre = std::min(q_pre, d);

    for (std::size_t e = 0; e < tree.edges.size(); ++e) {
        if (profile.delta2[e] > tol) continue;  // no incident blue point
        const auto [ui, vi] = tree.edges[e];
        const Point2 a = tree.vertices[ui];
        const Point2 b = tree.vertices[vi];
        const Point2 d = b - a;
        const double len = norm(d);
        if (len <= tol) throw DegenerateGeometry("degenerate tree edge");
        const Point2 dhat = d * (1.0 / len);
        const Point2 nhat = perp_left(dhat);

        // Feet of the incident blue points along the edge.
        double t_sum = 0.0;
        int t_cnt = 0;
        for (const Point2& p : blue) {
            if (dist_point_segment(p, {a, b}) <= tol) {
                const double t = std::clamp(dot(p - a, dhat) / len, 0.0, 1.0);
                t_sum += t;
                ++t_cnt;
            }
        }
        const double t_apex = t_cnt > 0 ? t_sum / t_cnt : 0.5;

        // Local feature gap: other tree vertices and non-adjacent edges.
        double gap = kInf;
        for (std::size_t w = 0; w < tree.vertices.size(); ++w) {
            if (static_cast<int>(w) == ui || static_cast<int>(w) == vi) continue;
            const double dw = dist_point_segment(tree.vertices[w], {a, b});
            if (dw > tol) gap = std::min(gap, dw);
        }
        for (std::size_t f = 0; f < tree.edges.size(); ++f) {
            if (f == e) continue;
            const auto [x, y] = tree.edges[f];
            if (x == ui || x == vi || y == ui || y == vi) continue;
            for (const Segment& s : out.edge_geometry(static_cast<int>(f))) {
                const double df = dist_segment_segment({a, b}, s);
                if (df > tol) gap = std::min(gap, df);
            }
        }

        double base = std::min({profile.delta3[e], profile.delta1[ui], profile.delta1[vi], gap});
        base = std::isfinite(base) ? base / 4.0 : len / 4.0;
        if (std::isfinite(q_pre)) base = std::min(base, q_pre / 2.0);
        base = std::min(base, len / 4.0);
        if (base <= tol) throw DegenerateGeometry("detour displacement underflows tolerance");

        const Point2 foot = a + dhat * (t_apex * len);
        const double score_left = detour_blue_clearance(a, foot + nhat * base, b, blue);
        const double score_right = detour_blue_clearance(a, foot + nhat * (-base), b, blue);
        const double side = score_left >= score_right ? 1.0 : -1.0;

        bool placed = false;
        double h = base;
        for (int attempt = 0; attempt < 8 && !placed; ++attempt, h /= 2.0) {
            const Point2 apex = foot + nhat * (side * h);
            if (detour_blue_clearance(a, apex, b, blue) <= tol) continue;
            bool clean = true;
            for (std::size_t w = 0; w < tree.vertices.size() && clean; ++w) {
                if (static_cast<int>(w) == ui || static_cast<int>(w) == vi) continue;
                if (dist_point_segment(tree.vertices[w], {a, apex}) <= tol ||
                    dist_point_segment(tree.vertices[w], {apex, b}) <= tol)
                    clean = false;
            }
            for (std::size_t f = 0; f < tree.edges.size() && clean; ++f) {
                if (f == e) continue;
                const auto [x, y] = tree.edges[f];
                const bool adjacent = x == ui || x == vi || y == ui || y == vi;
                for (const Segment& s : out.edge_geometry(static_cast<int>(f))) {
                    if (adjacent) {
                        if (segments_properly_intersect(s, {a, apex}, tol) ||
                            segments_properly_intersect(s, {apex, b}, tol))
                            clean = false;
                    } else if (segments_intersect(s, {a, apex}, tol) ||
                               segments_intersect(s, {apex, b}, tol)) {
                        clean = false;
                    }
                }
            }
            if (clean) {
                out.bends[e] = apex;
                placed = true;
            }
        }
        if (!placed) throw DegenerateGeometry("could not place a blue-free detour");
    }
    return out;
}

// ── Contour of the doubled tree ─────────────────────────────────────

namespace {

struct DirSeg {
    Point2 a, b;
};

Point2 rotate(const Point2& v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {v.x * c - v.y * s, v.x * s + v.y * c};
}

// Closed loop of directed segments traced by the Euler tour of the doubled tree.
std::vector<DirSeg> euler_loop(const PlaneTree& tree) {
    const int n = static_cast<int>(tree.vertices.size());
    struct Arc {
        int edge;
        int to;
        double angle;
    };
    std::vector<std::vector<Arc>> arcs(n);
    for (int e = 0; e < static_cast<int>(tree.edges.size()); ++e) {
        const auto [u, v] = tree.edges[e];
        const Point2 apex_or_end_u =
            tree.bends[e] ? *tree.bends[e] : tree.vertices[v];
        const Point2 apex_or_end_v =
            tree.bends[e] ? *tree.bends[e] : tree.vertices[u];
        const Point2 du = apex_or_end_u - tree.vertices[u];
        const Point2 dv = apex_or_end_v - tree.vertices[v];
        arcs[u].push_back({e, v, std::atan2(du.y, du.x)});
        arcs[v].push_back({e, u, std::atan2(dv.y, dv.x)});
    }
    for (auto& list : arcs)
        std::sort(list.begin(), list.end(), [](const Arc& a, const Arc& b) {
            return a.angle < b.angle || (a.angle == b.angle && a.edge < b.edge);
        });

    int start = -1;
    for (int v = 0; v < n && start < 0; ++v)
        if (!arcs[v].empty()) start = v;
    if (start < 0) throw DegenerateGeometry("tree has no edges");

    std::vector<DirSeg> loop;
    int cur = start;
    int cur_arc = 0;
    const int total = 2 * static_cast<int>(tree.edges.size());
    for (int step = 0; step < total; ++step) {
        const Arc arc = arcs[cur][cur_arc];
        const Point2 from = tree.vertices[cur];
        const Point2 to = tree.vertices[arc.to];
        if (tree.bends[arc.edge]) {
            const Point2 m = *tree.bends[arc.edge];
            loop.push_back({from, m});
            loop.push_back({m, to});
        } else {
            loop.push_back({from, to});
        }
        // Arrived at arc.to via arc.edge: depart on the next arc counterclockwise.
        const auto& list = arcs[arc.to];
        int idx = -1;
        for (int i = 0; i < static_cast<int>(list.size()); ++i)
            if (list[i].edge == arc.edge) idx = i;
        cur = arc.to;
        cur_arc = (idx + 1) % static_cast<int>(list.size());
    }
    return loop;
}

struct OffsetAttempt {
    std::vector<Point2> ring;
    bool ok = false;
};

OffsetAttempt offset_loop(const std::vector<DirSeg>& loop, double h, double tol) {
    OffsetAttempt out;
    const int m = static_cast<int>(loop.size());
    struct Off {
        Point2 base;   // offset start point (param 0)
        Point2 dir;    // unit direction
        double len;
        double lo, hi;                 // effective param interval after trims
        std::vector<Point2> wrap_pts;  // inserted after this segment
    };
    std::vector<Off> offs(m);
    for (int i = 0; i < m; ++i) {
        const Point2 d = loop[i].b - loop[i].a;
        const double len = norm(d);
        if (len <= tol) return out;
        const Point2 dhat = d * (1.0 / len);
        const Point2 nr{dhat.y, -dhat.x};  // walking-side (right) normal
        offs[i] = {loop[i].a + nr * h, dhat, len, 0.0, len, {}};
    }

    for (int i = 0; i < m; ++i) {
        const int j = (i + 1) % m;
        const Point2 c = loop[i].b;
        const Point2 ni{offs[i].dir.y, -offs[i].dir.x};
        const Point2 nj{offs[j].dir.y, -offs[j].dir.x};
        double theta = std::atan2(cross(ni, nj), dot(ni, nj));
        if (theta <= -std::numbers::pi + 1e-9) theta = std::numbers::pi;  // reversal wraps outward
        if (std::abs(theta) <= 1e-12) continue;  // straight through
        if (theta > 0.0) {
            // Outer wrap: miter apexes on the circle of radius h around the corner.
            if (theta > std::numbers::pi / 2.0 + 1e-9)
                offs[i].wrap_pts.push_back(c + rotate(ni, theta / 2.0) * h);
        } else {
            // Inner corner: trim both offset segments at their intersection.
            const double denom = cross(offs[i].dir, offs[j].dir);
            if (std::abs(denom) < 1e-15) return out;
            const Point2 delta = offs[j].base - offs[i].base;
            const double t = cross(delta, offs[j].dir) / denom;
            const double s = cross(delta, offs[i].dir) / denom;
            if (t <= 0.0 || t > offs[i].len + h || s < -h || s >= offs[j].len) return out;
            offs[i].hi = std::min(offs[i].hi, t);
            offs[j].lo = std::max(offs[j].lo, s);
        }
    }

    for (int i = 0; i < m; ++i)
        if (offs[i].lo >= offs[i].hi - tol) return out;  // segment fully consumed

    std::vector<Point2>& ring = out.ring;
    auto push = [&](const Point2& p) {
        if (ring.empty() || dist(ring.back(), p) > tol) ring.push_back(p);
    };
    for (int i = 0; i < m; ++i) {
        push(offs[i].base + offs[i].dir * offs[i].lo);
        push(offs[i].base + offs[i].dir * offs[i].hi);
        for (const Point2& w : offs[i].wrap_pts) push(w);
    }
    if (ring.size() >= 2 && dist(ring.front(), ring.back()) <= tol) ring.pop_back();
    if (ring.size() < 3) return out;
    out.ok = true;
    return out;
}

}  // namespace

SimpleCycle tree_contour(const PlaneTree& tree, double offset, double tol) {
    if (tree.vertices.empty()) throw DegenerateGeometry("empty tree");
    if (offset <= 2.0 * tol) throw DegenerateGeometry("contour offset underflows tolerance");

    if (tree.edges.empty()) {
        if (tree.vertices.size() != 1)
            throw DegenerateGeometry("disconnected tree (no edges over several vertices)");
        const Point2 v = tree.vertices[0];
        const double h = offset;
        SimpleCycle c;
        c.vertices = {{v.x - h, v.y - h}, {v.x + h, v.y - h}, {v.x + h, v.y + h}, {v.x - h, v.y + h}};
        c.offset = h;
        c.area = polygon_signed_area(c.vertices);
        return c;
    }

    const auto loop = euler_loop(tree);
    double h = offset;
    for (int attempt = 0; attempt <= 8; ++attempt, h /= 2.0) {
        if (h <= 2.0 * tol) break;
        OffsetAttempt att = offset_loop(loop, h, tol);
        if (!att.ok) continue;
        if (!polygon_is_simple(att.ring, tol)) continue;
        const double area = polygon_signed_area(att.ring);
        if (area <= 0.0) continue;
        bool vertices_inside = true;
        for (const Point2& v : tree.vertices)
            if (point_vs_polygon(v, att.ring, tol) != Region::Interior) {
                vertices_inside = false;
                break;
            }
        if (!vertices_inside) continue;
        SimpleCycle c;
        c.vertices = std::move(att.ring);
        c.offset = h;
        c.area = area;
        return c;
    }
    throw DegenerateGeometry("miter join self-intersects at every retried offset");
}

SimpleCycle cycle_around(const std::vector<Point2>& reds, const std::vector<Point2>& blues,
                         PlaneTree tree, double tol) {
    const ClearanceProfile prof = clearance_profile(tree, blues, tol);
    PlaneTree bent = bend_edges(tree, blues, prof, tol);
    const ClearanceProfile post = clearance_profile(bent, blues, tol);
    const double q = post.min_positive_clearance(tol);
    const double scale = std::max({bent.bbox_diagonal(), 1e-6});
    double offset = std::isfinite(q) ? q / 8.0 : scale / 8.0;
    offset = std::min(offset, scale);  // keep the contour at instance scale

    for (int attempt = 0; attempt < 4; ++attempt, offset /= 2.0) {
        SimpleCycle c;
        try {
            c = tree_contour(bent, offset, tol);
        } catch (const DegenerateGeometry&) {
            continue;
        }
        bool ok = true;
        for (const Point2& r : reds)
            if (point_vs_polygon(r, c.vertices, tol) != Region::Interior) ok = false;
        for (const Point2& b : blues)
            if (point_vs_polygon(b, c.vertices, tol) != Region::Exterior) ok = false;
        if (ok) return c;
    }
    throw DegenerateGeometry("failed to realize a separating contour");
}

SimpleCycle build_separating_cycle(const GeomInstance& inst, const Coloring& coloring) {
    if (inst.dim != 2) throw ValidationError("build_separating_cycle expects a 2D instance");
    if (static_cast<int>(coloring.color.size()) != inst.num_points())
        throw InfeasibleColoring("coloring size does not match instance");
    const Hypergraph h = inst.hypergraph();
    if (!coloring.valid_for(h)) throw InfeasibleColoring("coloring has a monochromatic edge");

    std::vector<Point2> reds, blues;
    for (int v = 0; v < inst.num_points(); ++v)
        (coloring.color[v] == VColor::Red ? reds : blues).push_back(inst.pt2(v));
    if (reds.empty()) throw InfeasibleColoring("coloring has no red vertex");

    return cycle_around(reds, blues, mst_tree(reds));
}

bool SeparationReport::pass() const {
    if (!cycle_simple) return false;
    for (const auto& e : edges)
        if (!e.has_inside || !e.has_outside) return false;
    return true;
}

SeparationReport validate_separation(const SimpleCycle& cycle, const GeomInstance& inst,
                                     double tol) {
    SeparationReport report;
    report.cycle_simple =
        cycle.vertices.size() >= 3 && polygon_is_simple(cycle.vertices, tol);
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        EdgeSeparation sep;
        sep.edge = static_cast<int>(e);
        for (int v : inst.edges[e]) {
            const Region r = point_vs_polygon(inst.pt2(v), cycle.vertices, tol);
            if (r == Region::Exterior)
                sep.has_outside = true;
            else
                sep.has_inside = true;
        }
        report.edges.push_back(sep);
    }
    return report;
}

}  // namespace sepcycle
