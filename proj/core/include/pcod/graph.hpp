#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcod {

using VertexId = int;
using EdgeId = int;
using FaceId = int;

struct Error : std::runtime_error {
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

enum class EndKind : std::uint8_t { Tail = 0, Head = 1 };

/* An edge end doubles as a dart: the traversal of `edge` that departs from
 * the vertex carrying this end. (e,Tail) walks tail->head. */
struct EdgeEnd {
    EdgeId edge = -1;
    EndKind kind = EndKind::Tail;

    bool operator==(const EdgeEnd &o) const { return edge == o.edge && kind == o.kind; }
    bool operator!=(const EdgeEnd &o) const { return !(*this == o); }
    EdgeEnd twin() const { return {edge, kind == EndKind::Tail ? EndKind::Head : EndKind::Tail}; }
};

struct Edge {
    EdgeId id;
    VertexId tail;
    VertexId head;
};

struct Face {
    FaceId id = -1;
    bool outer = false;
    /* Darts in traversal order: ccw for inner faces, cw for the outer one. */
    std::vector<EdgeEnd> boundary;
};

/* Embedded plane multidigraph. Vertices and edges use dense 0-based ids.
 * rotation[v] lists the edge ends at v in counter-clockwise order; a loop
 * contributes both of its ends. Immutable after construction. */
class PlaneDigraph {
  public:
    PlaneDigraph(int num_vertices, std::vector<Edge> edges,
                 std::vector<std::vector<EdgeEnd>> rotation, EdgeEnd outer_witness);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge> &edges() const { return edges_; }
    const Edge &edge(EdgeId e) const { return edges_[e]; }
    const std::vector<EdgeEnd> &rotation(VertexId v) const { return rotation_[v]; }

    VertexId end_vertex(EdgeEnd d) const {
        return d.kind == EndKind::Tail ? edges_[d.edge].tail : edges_[d.edge].head;
    }
    /* Vertex the dart d arrives at. */
    VertexId dart_target(EdgeEnd d) const { return end_vertex(d.twin()); }
    bool outgoing(EdgeEnd d) const { return d.kind == EndKind::Tail; }

    /* Position of end d in rotation(end_vertex(d)). */
    int rotation_index(EdgeEnd d) const;
    EdgeEnd succ_ccw(EdgeEnd d) const;
    EdgeEnd pred_ccw(EdgeEnd d) const;

    /* Face structure (traced once at construction). */
    const std::vector<Face> &faces() const { return faces_; }
    const Face &face(FaceId f) const { return faces_[f]; }
    FaceId outer_face() const { return outer_face_; }
    FaceId face_of(EdgeEnd d) const { return face_of_[dart_index(d)]; }
    /* Dart following d on its face: departs from pred_ccw(arrival end). */
    EdgeEnd next_in_face(EdgeEnd d) const { return pred_ccw(d.twin()); }
    EdgeEnd prev_in_face(EdgeEnd d) const { return succ_ccw(d).twin(); }

    int degree(VertexId v) const { return static_cast<int>(rotation_[v].size()); }
    int modality(VertexId v) const;
    bool is_k_modal(int k) const;
    int max_modality() const;

    bool has_two_cycles() const;
    int separating_triangles() const;
    bool is_irreducible_triangulation() const;

    bool adjacent(VertexId u, VertexId v) const;

    static int dart_index(EdgeEnd d) { return 2 * d.edge + (d.kind == EndKind::Head ? 1 : 0); }

  private:
    void trace_faces(EdgeEnd outer_witness);

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeEnd>> rotation_;
    std::vector<int> rot_index_;   // dart -> position in its rotation list
    std::vector<FaceId> face_of_;  // dart -> face
    std::vector<Face> faces_;
    FaceId outer_face_ = -1;
};

/* Mutable description used to assemble a PlaneDigraph; build() validates. */
struct GraphBuilder {
    struct VertexSpec {
        VertexId id;
        std::vector<EdgeEnd> rotation;
    };
    std::vector<VertexSpec> vertices;
    std::vector<Edge> edges;
    EdgeEnd outer_witness;

    PlaneDigraph build() const;
};

PlaneDigraph graph_from_json(const std::string &text);
std::string graph_to_json(const PlaneDigraph &g);
PlaneDigraph load_graph(const std::string &path);
void save_graph(const PlaneDigraph &g, const std::string &path);

}  // namespace pcod
