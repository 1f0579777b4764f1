#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sepcycle/errors.hpp"

namespace sepcycle {

enum class VColor : unsigned char { Red, Blue };

inline VColor opposite(VColor c) { return c == VColor::Red ? VColor::Blue : VColor::Red; }

// Vertex set plus a family of vertex-index sets of size >= 2.
struct Hypergraph {
    int n = 0;
    std::vector<std::vector<int>> edges;

    // Validates edge sizes, index ranges and duplicate vertices within an edge.
    static Hypergraph create(int n_vertices, std::vector<std::vector<int>> edge_list);

    bool is_graph() const;
    int min_edge_size() const;  // 0 when there are no edges
    // Uniform edge size, or nullopt when sizes differ (or no edges).
    std::optional<int> uniform_size() const;
    std::vector<int> vertex_degrees() const;
};

// Red/blue assignment with per-component provenance.
struct Coloring {
    std::vector<VColor> color;
    std::vector<int> component;
    std::vector<bool> flipped;  // per component

    bool valid_for(const Hypergraph& h) const;  // no monochromatic edge
    void flip_component(int comp);
    std::vector<int> red_vertices() const;
    std::vector<int> blue_vertices() const;
};

// Component labels 0..k-1 assigned in order of each component's lowest vertex;
// isolated vertices get their own label. Requires all edges of size 2.
std::vector<int> connected_components(const Hypergraph& g);

// Component labels for arbitrary hypergraphs (vertices connected when they share an edge).
std::vector<int> hyper_components(const Hypergraph& h);

struct BipartitionResult {
    std::optional<Coloring> coloring;
    std::vector<int> odd_cycle;  // witness closed walk when infeasible

    bool feasible() const { return coloring.has_value(); }
};

// BFS 2-coloring per component; the lowest-index vertex of each component is Red.
// Infeasible results carry an odd-cycle witness. Requires all edges of size 2.
BipartitionResult bipartition(const Hypergraph& g);

// Backtracking search with unit propagation on almost-monochromatic edges.
// Deterministic; nullopt when no valid 2-coloring exists.
std::optional<Coloring> two_color_exact(const Hypergraph& h);

// Uniformly random colorings until one is valid or the restarts run out.
std::optional<Coloring> two_color_random(const Hypergraph& h, int max_restarts, std::uint64_t seed);

// e * (max edge degree + 1) <= 2^(k-1) with k = minimum edge size; a sufficient
// 2-colorability condition via the local lemma.
bool lll_condition(const Hypergraph& h);

}  // namespace sepcycle
