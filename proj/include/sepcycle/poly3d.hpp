#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sepcycle/geom.hpp"
#include "sepcycle/instances.hpp"

namespace sepcycle {

// Spanning path over red points sorted by x (ties resolved by an infinitesimal-style
// shear before sorting); edges may carry a detour apex around an incident blue point.
struct MonotonePath3 {
    std::vector<Point3> vertices;
    std::vector<std::optional<Point3>> bends;  // one slot per consecutive edge

    // Vertices with detour apexes spliced in.
    std::vector<Point3> polyline() const;
    double length() const;
};

MonotonePath3 monotone_path_3d(const std::vector<Point3>& reds);

// For each blue point, the unique candidate edge is located by binary search on x
// and replaced by a two-segment detour when incident. The detour direction is the
// sampled perpendicular maximizing clearance from all points.
MonotonePath3 avoid_blue_3d(const MonotonePath3& path, const std::vector<Point3>& blue,
                            double tol = geometry_tolerance());

// Detours for an arbitrary polyline (quadratic incidence scan); used by the
// slab-path approximation whose spanning path is not x-monotone.
std::vector<Point3> bend_polyline_3d(const std::vector<Point3>& polyline,
                                     const std::vector<Point3>& blue,
                                     double tol = geometry_tolerance());

struct TriMesh {
    std::vector<Point3> vertices;
    std::vector<std::array<int, 3>> faces;  // outward-oriented triangles

    bool watertight_manifold(std::string* why = nullptr) const;
    long euler_characteristic() const;
    double signed_volume() const;
    // Total length of creased edges (dihedral angle bounded away from pi);
    // triangulation edges interior to flat faces do not count.
    double creased_edge_length() const;
    bool contains(const Point3& p) const;  // ray-parity test
};

// Square-section tube swept along a polyline: miter cross-sections on the
// reflecting plane of each joint, caps extended by delta past the endpoints.
// Joints sharper than 120 degrees are split by inserting a vertex first.
struct TubePolyhedron {
    std::vector<Point3> skeleton;  // polyline the mesh wraps (after joint splitting)
    double delta = 0.0;
    TriMesh mesh;
    double perimeter = 0.0;  // creased-edge length
    double skeleton_length = 0.0;
};

TubePolyhedron tube_polyhedron(const std::vector<Point3>& polyline, double delta,
                               double tol = geometry_tolerance());

// Bipartition, x-monotone red path, blue avoidance, tube with delta = clearance/8.
TubePolyhedron build_separating_polyhedron(const GeomInstance& inst);

// Boustrophedon over ceil(n^(1/3)) x-slabs, 2D strip path per slab, slabs chained.
struct FewPath3 {
    std::vector<int> order;
    int slabs = 0;
    double length = 0.0;
};

FewPath3 few_path_3d(const std::vector<Point3>& pts, double extent_x, double extent_y,
                     double extent_z);

struct DiamSelection3 {
    std::vector<int> selection;
    double diameter = 0.0;
    double lower_bound = 0.0;
};

// 2^n transversal enumeration for 3D matchings (test oracle).
DiamSelection3 min_diam_selection_3d(const GeomInstance& matching, int limit = 14);

struct Candidate3Outcome {
    int a = 0, b = 0;
    bool abandoned = false;
    double perimeter = 0.0;
};

struct Sqrt3dResult {
    TubePolyhedron tube;
    int best_a = -1, best_b = -1;
    std::vector<Candidate3Outcome> trace;
};

// Diameter-pair guessing with a (1, sqrt(3), sqrt(3))|ab| box per candidate; red
// points spanned by the slab path, converted to a tube; minimum perimeter wins.
Sqrt3dResult sqrt_approx_3d(const GeomInstance& inst);

// ASCII exports with shortest round-trip decimal formatting.
std::string mesh_to_stl(const TriMesh& mesh, const std::string& name);
std::string mesh_to_off(const TriMesh& mesh);

}  // namespace sepcycle
