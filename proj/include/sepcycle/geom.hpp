#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "sepcycle/errors.hpp"

namespace sepcycle {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2() = default;
    Point2(double px, double py) : x(px), y(py) {}

    Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point2& o) const { return !(*this == o); }
};

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Point3() = default;
    Point3(double px, double py, double pz) : x(px), y(py), z(pz) {}

    Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
    bool operator==(const Point3& o) const { return x == o.x && y == o.y && z == o.z; }
    bool operator!=(const Point3& o) const { return !(*this == o); }
};

inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point2& a) { return std::hypot(a.x, a.y); }
inline double dist(const Point2& a, const Point2& b) { return norm(b - a); }
inline Point2 perp_left(const Point2& a) { return {-a.y, a.x}; }
inline Point2 normalized(const Point2& a) {
    double n = norm(a);
    return n > 0.0 ? Point2{a.x / n, a.y / n} : Point2{0.0, 0.0};
}

inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(const Point3& a, const Point3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Point3& a) { return std::sqrt(dot(a, a)); }
inline double dist(const Point3& a, const Point3& b) { return norm(b - a); }
inline Point3 normalized(const Point3& a) {
    double n = norm(a);
    return n > 0.0 ? Point3{a.x / n, a.y / n, a.z / n} : Point3{0.0, 0.0, 0.0};
}

// A segment with distinct endpoints (degenerate segments are tolerated by the
// distance helpers but never produced by the constructions).
struct Segment {
    Point2 a, b;
};

struct Segment3 {
    Point3 a, b;
};

// Absolute length tolerance shared by all incidence predicates. The default suits
// instances of diameter O(1); callers working at other scales pass their own value
// (the CLI rescales it by the instance diameter).
double geometry_tolerance();
void set_geometry_tolerance(double tol);

enum class Region { Interior, Boundary, Exterior };

// Sign of the turn a->b->c: +1 left, -1 right, 0 when c lies within `tol` of line ab.
int orient(const Point2& a, const Point2& b, const Point2& c, double tol = geometry_tolerance());

// Euclidean distance from p to the closed segment.
double dist_point_segment(const Point2& p, const Segment& s);
double dist_point_segment(const Point3& p, const Segment3& s);

// Minimum distance between two closed segments.
double dist_segment_segment(const Segment& s, const Segment& t);

bool on_segment(const Point2& p, const Segment& s, double tol = geometry_tolerance());

// Do the two segments share at least one point (touching counts)?
bool segments_intersect(const Segment& s, const Segment& t, double tol = geometry_tolerance());

// Do the open interiors cross transversally?
bool segments_properly_intersect(const Segment& s, const Segment& t, double tol = geometry_tolerance());

// Strictly convex counterclockwise vertex ring with cached perimeter and diameter.
class ConvexPolygon {
public:
    // Validates: >= 3 vertices, strictly convex CCW (every consecutive triple turns left).
    static ConvexPolygon from_ccw_ring(std::vector<Point2> ring, double tol = geometry_tolerance());

    const std::vector<Point2>& vertices() const { return ring_; }
    std::size_t size() const { return ring_.size(); }
    double perimeter() const { return perimeter_; }
    double diameter() const { return diameter_; }

private:
    ConvexPolygon() = default;
    std::vector<Point2> ring_;
    double perimeter_ = 0.0;
    double diameter_ = 0.0;
};

// Counterclockwise hull of the input points; collinear triples pruned so the result
// is strictly convex. Throws DegenerateInput when fewer than 3 distinct points
// remain or all points are collinear.
ConvexPolygon convex_hull(const std::vector<Point2>& points, double tol = geometry_tolerance());

// Ray-casting classification against a closed (not necessarily convex) simple polygon.
Region point_vs_polygon(const Point2& p, const std::vector<Point2>& poly, double tol = geometry_tolerance());

// Quadratic pairwise test: no two non-adjacent edges intersect, adjacent edges meet
// only at the shared vertex.
bool polygon_is_simple(const std::vector<Point2>& poly, double tol = geometry_tolerance());

// Width of the enclosing strip orthogonal to direction `angle`: the extent of the
// projection onto (cos angle, sin angle). Canonical domain [0, pi), other angles accepted.
double width(const ConvexPolygon& poly, double angle);

// Membership in the Minkowski sum conv(poly) + B(r).
bool inflated_contains(const ConvexPolygon& poly, double r, const Point2& p,
                       double tol = geometry_tolerance());

// Distance from a point to a convex polygon (0 when inside or on the boundary).
double dist_point_convex(const Point2& p, const ConvexPolygon& poly, double tol = geometry_tolerance());

// Maximum pairwise distance with a realizing pair; ties broken by the
// lexicographically smallest index pair.
std::pair<std::pair<int, int>, double> diameter_pair(const std::vector<Point2>& points);
std::pair<std::pair<int, int>, double> diameter_pair(const std::vector<Point3>& points);

// Shoelace area, positive for counterclockwise rings.
double polygon_signed_area(const std::vector<Point2>& ring);

// Cyclic edge-length sum; a 2-point ring yields twice the distance, a single point 0.
double polygon_perimeter(const std::vector<Point2>& ring);

}  // namespace sepcycle
