#include "sepcycle/geom.hpp"

#include <algorithm>
#include <limits>

namespace sepcycle {

namespace {
double g_tolerance = 1e-9;
}

double geometry_tolerance() { return g_tolerance; }
void set_geometry_tolerance(double tol) { g_tolerance = tol; }

int orient(const Point2& a, const Point2& b, const Point2& c, double tol) {
    const Point2 ab = b - a;
    const Point2 ac = c - a;
    const double cr = cross(ab, ac);
    // |cr| = dist(c, line ab) * |ab|; threshold against the longer leg so the
    // predicate reads as "c within tol of the line".
    const double scale = std::max(norm(ab), norm(ac));
    if (std::abs(cr) <= tol * scale) return 0;
    return cr > 0.0 ? 1 : -1;
}

double dist_point_segment(const Point2& p, const Segment& s) {
    const Point2 d = s.b - s.a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return dist(p, s.a);
    double t = dot(p - s.a, d) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, s.a + d * t);
}

double dist_point_segment(const Point3& p, const Segment3& s) {
    const Point3 d = s.b - s.a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return dist(p, s.a);
    double t = dot(p - s.a, d) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, s.a + d * t);
}

bool on_segment(const Point2& p, const Segment& s, double tol) {
    return dist_point_segment(p, s) <= tol;
}

bool segments_properly_intersect(const Segment& s, const Segment& t, double tol) {
    const int o1 = orient(s.a, s.b, t.a, tol);
    const int o2 = orient(s.a, s.b, t.b, tol);
    const int o3 = orient(t.a, t.b, s.a, tol);
    const int o4 = orient(t.a, t.b, s.b, tol);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

bool segments_intersect(const Segment& s, const Segment& t, double tol) {
    if (segments_properly_intersect(s, t, tol)) return true;
    return on_segment(t.a, s, tol) || on_segment(t.b, s, tol) ||
           on_segment(s.a, t, tol) || on_segment(s.b, t, tol);
}

double dist_segment_segment(const Segment& s, const Segment& t) {
    if (segments_properly_intersect(s, t, 0.0)) return 0.0;
    double d = dist_point_segment(t.a, s);
    d = std::min(d, dist_point_segment(t.b, s));
    d = std::min(d, dist_point_segment(s.a, t));
    d = std::min(d, dist_point_segment(s.b, t));
    return d;
}

ConvexPolygon ConvexPolygon::from_ccw_ring(std::vector<Point2> ring, double tol) {
    if (ring.size() < 3) throw DegenerateInput("convex polygon needs at least 3 vertices");
    const std::size_t k = ring.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Point2& a = ring[i];
        const Point2& b = ring[(i + 1) % k];
        const Point2& c = ring[(i + 2) % k];
        if (orient(a, b, c, tol) != 1)
            throw DegenerateInput("vertex ring is not strictly convex counterclockwise");
    }
    ConvexPolygon poly;
    poly.ring_ = std::move(ring);
    poly.perimeter_ = polygon_perimeter(poly.ring_);
    poly.diameter_ = diameter_pair(poly.ring_).second;
    return poly;
}

ConvexPolygon convex_hull(const std::vector<Point2>& points, double tol) {
    std::vector<Point2> pts = points;
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw DegenerateInput("convex hull needs at least 3 distinct points");

    const std::size_t n = pts.size();
    std::vector<Point2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], pts[i], tol) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i], tol) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw DegenerateInput("all points collinear");
    return ConvexPolygon::from_ccw_ring(std::move(hull), tol);
}

Region point_vs_polygon(const Point2& p, const std::vector<Point2>& poly, double tol) {
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (on_segment(p, {poly[i], poly[(i + 1) % k]}, tol)) return Region::Boundary;
    }
    // Crossing number with the half-open rule; robust here because p is not
    // within tol of any edge.
    bool inside = false;
    for (std::size_t i = 0; i < k; ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % k];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (xint > p.x) inside = !inside;
        }
    }
    return inside ? Region::Interior : Region::Exterior;
}

bool polygon_is_simple(const std::vector<Point2>& poly, double tol) {
    const std::size_t k = poly.size();
    if (k < 3) return false;
    for (std::size_t i = 0; i < k; ++i) {
        if (dist(poly[i], poly[(i + 1) % k]) <= tol) return false;  // zero-length edge
    }
    for (std::size_t i = 0; i < k; ++i) {
        const Segment si{poly[i], poly[(i + 1) % k]};
        // Adjacent edge: may only touch at the shared vertex (no fold-back overlap).
        const Point2& c = poly[(i + 2) % k];
        if (orient(si.a, si.b, c, tol) == 0 && dot(si.b - si.a, c - si.b) < 0.0) return false;
        for (std::size_t j = i + 2; j < k; ++j) {
            if (i == 0 && j == k - 1) continue;  // closing edge is adjacent to edge 0
            const Segment sj{poly[j], poly[(j + 1) % k]};
            if (segments_intersect(si, sj, tol)) return false;
        }
    }
    return true;
}

double width(const ConvexPolygon& poly, double angle) {
    const Point2 dir{std::cos(angle), std::sin(angle)};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Point2& v : poly.vertices()) {
        const double t = dot(v, dir);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    return hi - lo;
}

double dist_point_convex(const Point2& p, const ConvexPolygon& poly, double tol) {
    if (point_vs_polygon(p, poly.vertices(), tol) != Region::Exterior) return 0.0;
    const auto& ring = poly.vertices();
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ring.size(); ++i) {
        d = std::min(d, dist_point_segment(p, {ring[i], ring[(i + 1) % ring.size()]}));
    }
    return d;
}

bool inflated_contains(const ConvexPolygon& poly, double r, const Point2& p, double tol) {
    return dist_point_convex(p, poly, tol) <= r + tol;
}

template <typename P>
static std::pair<std::pair<int, int>, double> diameter_pair_impl(const std::vector<P>& points) {
    std::pair<int, int> best{0, 0};
    double best_d = 0.0;
    const int n = static_cast<int>(points.size());
    best = {0, n > 1 ? 1 : 0};
    best_d = n > 1 ? dist(points[0], points[1]) : 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = dist(points[i], points[j]);
            if (d > best_d) {
                best_d = d;
                best = {i, j};
            }
        }
    }
    return {best, best_d};
}

std::pair<std::pair<int, int>, double> diameter_pair(const std::vector<Point2>& points) {
    return diameter_pair_impl(points);
}

std::pair<std::pair<int, int>, double> diameter_pair(const std::vector<Point3>& points) {
    return diameter_pair_impl(points);
}

double polygon_signed_area(const std::vector<Point2>& ring) {
    double a = 0.0;
    const std::size_t k = ring.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Point2& p = ring[i];
        const Point2& q = ring[(i + 1) % k];
        a += cross(p, q);
    }
    return a / 2.0;
}

double polygon_perimeter(const std::vector<Point2>& ring) {
    const std::size_t k = ring.size();
    if (k < 2) return 0.0;
    double len = 0.0;
    for (std::size_t i = 0; i < k; ++i) len += dist(ring[i], ring[(i + 1) % k]);
    return len;
}

}  // namespace sepcycle
