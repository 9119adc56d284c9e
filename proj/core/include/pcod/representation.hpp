#pragma once

#include <array>
#include <string>
#include <vector>

#include "pcod/graph.hpp"

namespace pcod {

enum class Cover : std::uint8_t { L, N, R };

/* One tuple of a confluent orthogonal representation. The dart identifies
 * both the edge and the end vertex v it is traversed from; `a` is the angle
 * at v between this edge and its predecessor on the face, in units of pi/2
 * (0..4); `s` counts left turns when walking the edge from v; `b` marks a
 * covered bend on the segment incident to v. */
struct RepEntry {
    EdgeEnd dart;
    int a = 0;
    int s = 0;
    Cover b = Cover::N;
};

class Representation {
  public:
    struct FaceList {
        bool outer = false;
        std::vector<RepEntry> entries;  // counter-clockwise circular order
    };

    Representation() = default;
    /* Face lists must mirror the graph's traced faces (same darts, same
     * circular order). Builds the dart index. */
    Representation(const PlaneDigraph &g, std::vector<FaceList> faces);

    /* Skeleton whose entry order follows g's face tracing; a/s/b zeroed. */
    static Representation skeleton(const PlaneDigraph &g);

    const std::vector<FaceList> &faces() const { return faces_; }
    int num_faces() const { return static_cast<int>(faces_.size()); }
    FaceId outer_face() const { return outer_; }

    const RepEntry &entry(EdgeEnd d) const { return at(d); }
    RepEntry &entry(EdgeEnd d) { return at(d); }
    const RepEntry &twin(const RepEntry &r) const { return at(r.dart.twin()); }
    const RepEntry &pred(const RepEntry &r) const;

    int s_of(EdgeEnd d) const { return at(d).s; }
    int total_bends(EdgeId e) const {
        return at({e, EndKind::Tail}).s + at({e, EndKind::Head}).s;
    }

  private:
    RepEntry &at(EdgeEnd d) { return faces_[pos_[PlaneDigraph::dart_index(d)].first].entries[pos_[PlaneDigraph::dart_index(d)].second]; }
    const RepEntry &at(EdgeEnd d) const { return faces_[pos_[PlaneDigraph::dart_index(d)].first].entries[pos_[PlaneDigraph::dart_index(d)].second]; }

    std::vector<FaceList> faces_;
    std::vector<std::pair<int, int>> pos_;  // dart -> (face, index)
    FaceId outer_ = -1;
};

struct FeasibilityReport {
    struct Item {
        bool ok = true;
        std::vector<std::string> offenders;
    };
    Item structure;    // well-formedness incl. "a multiple of pi iff switch"
    Item rotation;     // (i)
    Item angular_sum;  // (ii)
    Item covered;      // (iii)
    Item bend_or_end;  // (iv)
    Item parity;       // (v)

    bool feasible() const {
        return structure.ok && rotation.ok && angular_sum.ok && covered.ok && bend_or_end.ok &&
               parity.ok;
    }
    std::string summary() const;
};

/* Signed rotation of face f: sum of (2 - a + s[r] - s[rbar]). */
int rotation(const PlaneDigraph &g, const Representation &r, FaceId f);

FeasibilityReport validate(const PlaneDigraph &g, const Representation &r);

/* Number of independent bends of edge e: (s + sbar - 1)/2. */
int edge_split(const Representation &r, EdgeId e);
int split_complexity(const PlaneDigraph &g, const Representation &r);

/* Cancels opposite uncovered turns edge by edge until none remain. */
Representation eliminate_zigzags(const PlaneDigraph &g, const Representation &r);

/* True when the corner of `d` (between e[d] and its ccw successor at the
 * vertex) sits at a switch: both edge ends incoming or both outgoing. */
bool corner_is_switch(const PlaneDigraph &g, EdgeEnd d);

bool equal_up_to_rotation(const Representation &a, const Representation &b);

std::string representation_to_json(const PlaneDigraph &g, const Representation &r);
Representation representation_from_json(const PlaneDigraph &g, const std::string &text);
Representation load_representation(const PlaneDigraph &g, const std::string &path);
void save_representation(const PlaneDigraph &g, const Representation &r, const std::string &path);

}  // namespace pcod
