#pragma once

#include <vector>

#include "sepcycle/cycle2d.hpp"
#include "sepcycle/geom.hpp"
#include "sepcycle/instances.hpp"

namespace sepcycle {

// Candidate frame for one guessed diameter pair (a, b): a rectangle of width |ab|
// and height sqrt(3)|ab| centered at the midpoint of ab, with ab on its horizontal
// midline. Contains the lens of the two radius-|ab| disks around a and b.
struct GuessRectangle {
    Point2 a, b;
    Point2 mid;
    Point2 u;  // unit direction a -> b
    Point2 v;  // left normal of u
    double half_w = 0.0;
    double half_h = 0.0;

    GuessRectangle(const Point2& pa, const Point2& pb);

    bool contains(const Point2& p, double tol = geometry_tolerance()) const;
    // Coordinates with the origin at the rectangle's lower-left corner.
    Point2 to_frame(const Point2& p) const;
    double width() const { return 2.0 * half_w; }
    double height() const { return 2.0 * half_h; }
};

// Boustrophedon spanning path over horizontal strips.
struct FewPath {
    std::vector<int> order;  // visiting order (indices into the input list)
    int strips = 0;          // strip count s of the chosen bound
    double length = 0.0;
    double bound = 0.0;  // a-priori bound the construction guarantees
};

// Spanning path over points inside a width x height rectangle (frame coordinates).
// The strip count minimizes (s + 1/2) width + height + n height / (2s); the better
// of the two interleaved line families is kept, so for the unit square the length
// is at most sqrt(2n) + 7/4.
FewPath few_path_2d(const std::vector<Point2>& pts, double rect_width, double rect_height);

// Brute-force transversal of minimum diameter over a matching (one endpoint per
// pair); lower_bound = 2 * diameter. Test oracle only.
struct DiamSelection {
    std::vector<int> selection;  // chosen vertex per pair
    double diameter = 0.0;
    double lower_bound = 0.0;
};

DiamSelection min_diam_selection(const GeomInstance& matching, int limit = 14);

struct CandidateOutcome {
    int a = 0, b = 0;       // vertex indices of the guessed pair
    bool abandoned = false;  // some component had neither color class inside
    double length = 0.0;     // cycle length when not abandoned
};

struct SqrtApproxResult {
    SimpleCycle cycle;
    int best_a = -1, best_b = -1;
    std::vector<CandidateOutcome> trace;
};

// Diameter-pair guessing: per candidate pair build the rectangle, flip or abandon
// component colorings by containment, span the red points with a strip path and
// convert it to a cycle; the shortest cycle over all candidates wins (ties by
// candidate order). Throws Infeasible on odd cycles, NotAGraph on hyperedges.
SqrtApproxResult sqrt_approx(const GeomInstance& inst);

}  // namespace sepcycle
