#pragma once

#include "pcod/drawing.hpp"
#include "pcod/graph.hpp"
#include "pcod/representation.hpp"

namespace pcod {

/* Result of resolving all 0-angle fans: a plane graph of maximum degree 4
 * with an ordinary orthogonal representation (no 0 or full angles from
 * fans, every covered-bend flag resolved into the chain structure). */
struct ExpandedGraph {
    PlaneDigraph graph;  // G_R
    Representation rep;  // R' over G_R, all b = N

    std::vector<VertexId> orig_vertex;  // G_R vertex -> original vertex, -1 for chain vertices
    std::vector<EdgeId> piece_of;       // G_R edge -> original edge
    /* original edge -> its pieces tail->head; bool = piece aligned with walk */
    std::vector<std::vector<std::pair<EdgeId, bool>>> pieces;
};

ExpandedGraph expand(const PlaneDigraph &g, const Representation &r);

/* Rectangular refinement + per-axis longest paths; chain vertices re-merged
 * into their host edges as covered bends. */
OrthoDrawing compact(const PlaneDigraph &g, const ExpandedGraph &x);

/* compact(expand(g, r)) */
OrthoDrawing realize(const PlaneDigraph &g, const Representation &r);

/* Reads angles, turn counts and covered-bend flags off the geometry.
 * Fails if the drawing does not realize g's embedding. */
Representation extract_representation(const PlaneDigraph &g, const OrthoDrawing &d);

}  // namespace pcod
