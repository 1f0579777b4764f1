#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sepcycle/cycle2d.hpp"
#include "sepcycle/geom.hpp"
#include "sepcycle/instances.hpp"

namespace sepcycle {

// Point pairs whose 2n points are in strictly convex position.
struct ConvexInstance {
    std::vector<std::pair<Point2, Point2>> pairs;

    static ConvexInstance create(std::vector<std::pair<Point2, Point2>> pairs);
    static ConvexInstance from_instance(const GeomInstance& inst);

    int n() const { return static_cast<int>(pairs.size()); }
    std::vector<Point2> all_points() const;
};

// Scan bookkeeping for the subpolygon approximation.
struct ApproxTrace {
    struct Side {
        int from = 0, to = 0;     // clockwise scan positions
        double alpha = 0.0;       // angle between the chord and the first boundary edge
        double length = 0.0;
        bool nontrivial = false;  // at least one polygon vertex strictly inside the arc
        bool constrained = false;  // produced by a distance trigger (the last side may not be)
        bool is_short = false;     // length <= sqrt(eps) * diam
    };
    std::vector<int> r_positions;  // anchor positions in clockwise order
    std::vector<int> q_positions;
    std::vector<Side> sides;
    int q_bound = 0;  // ceil(10 pi / sqrt(eps) + 14)
    double eps = 0.0;

    double alpha_sum() const;  // over nontrivial sides
};

// Clockwise scan from the lexicographically smallest vertex: advance to the first
// vertex whose arc holds a point at distance >= eps*diam(P) from the chord, keep the
// anchors, and subdivide each constrained arc at its last interior vertex. Every
// vertex of P ends up within eps*diam(P) of the result.
std::pair<ConvexPolygon, ApproxTrace> approx_subpolygon(const ConvexPolygon& P, double eps);

// Every vertex of P lies in conv(Q) + B(eps*diam(P)) (sufficient by convexity).
bool verify_approx(const ConvexPolygon& P, const ConvexPolygon& Q, double eps,
                   double tol = geometry_tolerance());

// Smallest subpolygon size found by the rotating contiguous-arc greedy plus an
// exhaustive search over subset sizes 3..exhaustive_limit. Measurement helper for
// the regular-polygon growth experiment.
int min_subpolygon_size(const ConvexPolygon& P, double eps, int exhaustive_limit = 4);

// per(conv(Q) + B(r)) = per(Q) + 2 pi r.
double inflated_perimeter(const ConvexPolygon& Q, double r);

// Composite midpoint quadrature of the directional width over [0, pi); converges
// to the perimeter.
double width_integral(const ConvexPolygon& Q, int samples);

struct OracleResult {
    SimpleCycle cycle;
    std::vector<int> selection;  // chosen endpoint (0/1) per pair
    double perimeter = 0.0;
};

// Exhaustive one-point-per-pair enumeration; the minimum-perimeter selection hull
// is a shortest separating cycle for points in convex position.
OracleResult oracle_convex(const ConvexInstance& inst, int limit = 16);

struct PtasResult {
    SimpleCycle cycle;
    std::vector<int> selection;
    double perimeter = 0.0;
    int k = 0;                        // subset size cap from eps
    std::uint64_t candidates = 0;     // enumerated candidates
    std::uint64_t feasible_count = 0;
};

// Subset enumeration scheme: all endpoint selections of at most k pairs; a candidate
// is kept when its inflation by eps(1+2eps)diam covers one endpoint of every pair.
// Returns a cycle of length at most (1+4 eps) times the optimum. `eps` here is the
// internal parameter; callers targeting ratio (1+e) pass eps = e/4.
PtasResult ptas_a1(const ConvexInstance& inst, double eps);

// Feasibility of one enumeration candidate (test hook): subset of pair indices plus
// an endpoint bitmask.
bool ptas_candidate_feasible(const ConvexInstance& inst, const std::vector<int>& pair_subset,
                             std::uint64_t endpoint_mask, double eps);

}  // namespace sepcycle
