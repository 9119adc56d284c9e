#pragma once

#include <string>
#include <vector>

#include "pcod/graph.hpp"

namespace pcod {

struct Point {
    long long x = 0;
    long long y = 0;
    bool operator==(const Point &o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point &o) const { return !(*this == o); }
};

/* Polyline of an edge on the integer grid. pts.front() is the tail vertex,
 * pts.back() the head; the first segment is vertical, the last horizontal.
 * covered[i] flags the bend at pts[i+1] as lying on another edge. */
struct EdgePath {
    std::vector<Point> pts;
    std::vector<bool> covered;

    int bends() const { return static_cast<int>(pts.size()) - 2; }
};

struct OrthoDrawing {
    std::vector<Point> vertex_pos;   // by VertexId
    std::vector<EdgePath> edge_path; // by EdgeId
};

struct DrawingReport {
    std::vector<std::string> violations;
    bool clean() const { return violations.empty(); }
    std::string summary() const;
};

/* Geometric audit: pairwise segment sweep flagging crossings and overlaps
 * that are not confined to shared first/last segments, plus vertex
 * coordinate distinctness. */
DrawingReport check_drawing(const PlaneDigraph &g, const OrthoDrawing &d);

/* Per-edge polyline sanity: alternation, vertical start, horizontal end. */
void check_paths_well_formed(const PlaneDigraph &g, const OrthoDrawing &d);

std::string drawing_to_json(const PlaneDigraph &g, const OrthoDrawing &d);
OrthoDrawing drawing_from_json(const PlaneDigraph &g, const std::string &text);

struct SvgOptions {
    double corner_radius = 0.25;
    double scale = 24.0;
    bool labels = false;
};

std::string render_svg(const PlaneDigraph &g, const OrthoDrawing &d, const SvgOptions &opts = {});

}  // namespace pcod
