#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepcycle/geom.hpp"
#include "sepcycle/hypergraph.hpp"

namespace sepcycle {

struct InstanceMetadata {
    std::string name;
    std::optional<std::uint64_t> seed;
};

// Points in the plane or 3-space plus hyperedges over them; the problem input.
struct GeomInstance {
    int dim = 2;
    std::vector<Point3> points;  // z = 0 for planar instances
    std::vector<std::vector<int>> edges;
    std::optional<std::vector<VColor>> colors;  // externally supplied coloring
    InstanceMetadata meta;

    int num_points() const { return static_cast<int>(points.size()); }
    Point2 pt2(int i) const { return {points[i].x, points[i].y}; }
    std::vector<Point2> points2() const;

    Hypergraph hypergraph() const { return Hypergraph::create(num_points(), edges); }
    bool is_graph() const;
    // Every vertex appears in at most one edge and all edges have size 2.
    bool is_matching() const;

    // Throws ValidationError on duplicate points, singleton/out-of-range edges,
    // non-finite coordinates or a malformed color list.
    void validate() const;

    double bbox_diagonal() const;
};

// JSON document <-> instance. parse throws ParseError/ValidationError; the
// round trip serialize(parse(serialize(x))) == serialize(x) holds exactly.
GeomInstance parse_instance(const std::string& text);
std::string serialize_instance(const GeomInstance& inst);

GeomInstance load_instance_file(const std::string& path);
void save_instance_file(const GeomInstance& inst, const std::string& path);

// ── Generators (deterministic functions of their parameters and seed) ──

// n = k^2 segment pairs: left endpoints a k x k grid in a unit square, right
// endpoints the same grid shifted so the squares are at distance 1.
GeomInstance gen_grid_hard(int k);

// 2n points on a randomly rotated ellipse (strictly convex position), randomly paired.
GeomInstance gen_convex(int n, std::uint64_t seed);

GeomInstance gen_infeasible_triangle();
GeomInstance gen_odd_cycle(int len);   // len odd, >= 3
GeomInstance gen_even_cycle(int len);  // len even, >= 4 (feasible control case)

// Fixed instance on which any cycle confined to the minimum transversal square
// fails separation while the component-flip algorithm succeeds.
GeomInstance gen_escape_square();

// Random matching of n pairs (2n distinct points) in the unit square/cube.
GeomInstance gen_random_matching(int n, std::uint64_t seed, int dim = 2);

// Random graph with n vertices and m edges; when planted_bipartite, edges only
// join the two sides of a random split (guaranteeing feasibility).
GeomInstance gen_random_graph(int n, int m, std::uint64_t seed, bool planted_bipartite,
                              int dim = 2);

// Random hypergraph with edge sizes in [2, max_edge_size].
GeomInstance gen_random_hypergraph(int n, int m, int max_edge_size, std::uint64_t seed);

// m points in strictly convex position (counterclockwise ring on a random ellipse).
std::vector<Point2> gen_convex_ring(int m, std::uint64_t seed);

// Portable uniform double in [0, 1) from a seeded engine (53 mantissa bits).
double uniform01(std::uint64_t raw);

}  // namespace sepcycle
