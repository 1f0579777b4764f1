#pragma once

#include <optional>
#include <vector>

#include "sepcycle/geom.hpp"
#include "sepcycle/hypergraph.hpp"
#include "sepcycle/instances.hpp"

namespace sepcycle {

// Non-crossing tree over red points; edges may carry a detour apex that replaces
// the straight segment by a two-segment path around an incident blue point.
struct PlaneTree {
    std::vector<Point2> vertices;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::optional<Point2>> bends;  // one slot per edge

    // One or two segments realizing edge e.
    std::vector<Segment> edge_geometry(int e) const;
    double total_length() const;
    double bbox_diagonal() const;
};

// Minimum spanning tree (Prim, quadratic) over the given points.
PlaneTree mst_tree(const std::vector<Point2>& points);

// Path through the points in the given visiting order.
PlaneTree path_tree(const std::vector<Point2>& points, const std::vector<int>& order);

// delta1: per red point, distance to the nearest blue point.
// delta2: per tree edge, distance to the nearest blue point (0 when incident).
// delta3: per tree edge, smallest positive distance to a blue point (+inf when
//         every blue point is incident or farther than the bounding-box cap).
struct ClearanceProfile {
    std::vector<double> delta1;
    std::vector<double> delta2;
    std::vector<double> delta3;

    // Smallest finite positive value over all three families (+inf when none).
    double min_positive_clearance(double tol = geometry_tolerance()) const;
};

ClearanceProfile clearance_profile(const PlaneTree& tree, const std::vector<Point2>& blue,
                                   double tol = geometry_tolerance());

// Replace every edge incident to a blue point by a two-segment detour whose apex
// clears all blue points; the result is non-crossing with blue-free edges.
PlaneTree bend_edges(const PlaneTree& tree, const std::vector<Point2>& blue,
                     const ClearanceProfile& profile, double tol = geometry_tolerance());

// Simple closed polygon produced by offsetting an Euler tour of the doubled tree.
struct SimpleCycle {
    std::vector<Point2> vertices;
    double offset = 0.0;  // offset used by the contour construction (0 for hull cycles)
    double area = 0.0;    // enclosed area

    double length() const { return polygon_perimeter(vertices); }
};

// Contour of the doubled tree at the given offset: every traversal of every edge
// is shifted to its walking side and consecutive traversals are joined by miter
// corners (leaf caps get an apex vertex). Retries internally with offset/2 (up to
// 8 halvings) when a join self-intersects; throws DegenerateGeometry afterwards.
SimpleCycle tree_contour(const PlaneTree& tree, double offset, double tol = geometry_tolerance());

// Full construction over an explicit red/blue split: clearances, detours, contour.
SimpleCycle cycle_around(const std::vector<Point2>& reds, const std::vector<Point2>& blues,
                         PlaneTree tree, double tol = geometry_tolerance());

// Composes the red minimum spanning tree with bend_edges and tree_contour.
// Throws InfeasibleColoring when the coloring has a monochromatic edge.
SimpleCycle build_separating_cycle(const GeomInstance& inst, const Coloring& coloring);

struct EdgeSeparation {
    int edge = 0;
    bool has_inside = false;   // >= 1 vertex Interior or Boundary
    bool has_outside = false;  // >= 1 vertex Exterior
};

struct SeparationReport {
    bool cycle_simple = false;
    std::vector<EdgeSeparation> edges;

    bool pass() const;
};

SeparationReport validate_separation(const SimpleCycle& cycle, const GeomInstance& inst,
                                     double tol = geometry_tolerance());

}  // namespace sepcycle
