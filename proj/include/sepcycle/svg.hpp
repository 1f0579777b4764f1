#pragma once

#include <string>

#include "sepcycle/cycle2d.hpp"
#include "sepcycle/hypergraph.hpp"
#include "sepcycle/instances.hpp"
#include "sepcycle/poly3d.hpp"

namespace sepcycle {

struct RenderOptions {
    const SimpleCycle* cycle = nullptr;      // closed red polyline overlay
    const Coloring* coloring = nullptr;      // point colors (red/blue)
    const TubePolyhedron* tube = nullptr;    // creased edges of a 3D solution, xy-projected
};

// Deterministic SVG 1.1 document: points as dots, graph edges as segments, larger
// hyperedges as hull outlines, solutions as overlays. Byte-identical for identical
// inputs (no timestamps, 6 significant digits).
std::string render_svg(const GeomInstance& inst, const RenderOptions& opts = {});

}  // namespace sepcycle
