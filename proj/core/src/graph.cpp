#include "pcod/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pcod {

PlaneDigraph::PlaneDigraph(int num_vertices, std::vector<Edge> edges,
                           std::vector<std::vector<EdgeEnd>> rotation, EdgeEnd outer_witness)
    : n_(num_vertices), edges_(std::move(edges)), rotation_(std::move(rotation)) {
    if (static_cast<int>(rotation_.size()) != n_)
        throw Error("rotation list count does not match vertex count");
    for (int e = 0; e < num_edges(); ++e) {
        if (edges_[e].id != e) throw Error("edge ids must be dense 0..m-1");
        if (edges_[e].tail < 0 || edges_[e].tail >= n_ || edges_[e].head < 0 ||
            edges_[e].head >= n_)
            throw Error("edge endpoint out of range");
    }

    rot_index_.assign(2 * num_edges(), -1);
    for (VertexId v = 0; v < n_; ++v) {
        for (int i = 0; i < static_cast<int>(rotation_[v].size()); ++i) {
            EdgeEnd d = rotation_[v][i];
            if (d.edge < 0 || d.edge >= num_edges()) throw Error("rotation references unknown edge");
            if (end_vertex(d) != v)
                throw Error("rotation of vertex " + std::to_string(v) +
                            " lists an end of edge " + std::to_string(d.edge) +
                            " that is not incident to it");
            int di = dart_index(d);
            if (rot_index_[di] != -1) throw Error("edge end listed twice in rotations");
            rot_index_[di] = i;
        }
    }
    for (int di = 0; di < 2 * num_edges(); ++di)
        if (rot_index_[di] == -1)
            throw Error("dangling edge end: edge " + std::to_string(di / 2) +
                        " missing from rotation lists");

    /* connectivity */
    if (n_ > 0) {
        std::vector<char> seen(n_, 0);
        std::vector<VertexId> stack = {0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (EdgeEnd d : rotation_[v]) {
                VertexId w = dart_target(d);
                if (!seen[w]) {
                    seen[w] = 1;
                    ++cnt;
                    stack.push_back(w);
                }
            }
        }
        if (cnt != n_) throw Error("graph must be connected");
    }

    trace_faces(outer_witness);
}

int PlaneDigraph::rotation_index(EdgeEnd d) const { return rot_index_[dart_index(d)]; }

EdgeEnd PlaneDigraph::succ_ccw(EdgeEnd d) const {
    VertexId v = end_vertex(d);
    const auto &rot = rotation_[v];
    return rot[(rot_index_[dart_index(d)] + 1) % rot.size()];
}

EdgeEnd PlaneDigraph::pred_ccw(EdgeEnd d) const {
    VertexId v = end_vertex(d);
    const auto &rot = rotation_[v];
    return rot[(rot_index_[dart_index(d)] + rot.size() - 1) % rot.size()];
}

void PlaneDigraph::trace_faces(EdgeEnd outer_witness) {
    face_of_.assign(2 * num_edges(), -1);
    faces_.clear();
    for (int e = 0; e < num_edges(); ++e) {
        for (EndKind k : {EndKind::Tail, EndKind::Head}) {
            EdgeEnd start{e, k};
            if (face_of_[dart_index(start)] != -1) continue;
            Face f;
            f.id = static_cast<FaceId>(faces_.size());
            EdgeEnd d = start;
            do {
                face_of_[dart_index(d)] = f.id;
                f.boundary.push_back(d);
                d = next_in_face(d);
            } while (d != start);
            faces_.push_back(std::move(f));
        }
    }

    if (num_edges() > 0) {
        int v = n_, ed = num_edges(), fc = static_cast<int>(faces_.size());
        if (v - ed + fc != 2)
            throw Error("rotation system is not planar: Euler check v-e+f=2 failed (" +
                        std::to_string(v) + "-" + std::to_string(ed) + "+" + std::to_string(fc) +
                        ")");
        if (outer_witness.edge < 0 || outer_witness.edge >= num_edges())
            throw Error("outer-face witness references unknown edge");
        outer_face_ = face_of_[dart_index(outer_witness)];
        faces_[outer_face_].outer = true;
    } else {
        faces_.push_back(Face{0, true, {}});
        outer_face_ = 0;
    }
}

int PlaneDigraph::modality(VertexId v) const {
    const auto &rot = rotation_[v];
    int d = static_cast<int>(rot.size());
    if (d <= 1) return 0;
    int transitions = 0;
    for (int i = 0; i < d; ++i)
        if (outgoing(rot[i]) != outgoing(rot[(i + 1) % d])) ++transitions;
    return transitions;
}

bool PlaneDigraph::is_k_modal(int k) const {
    for (VertexId v = 0; v < n_; ++v)
        if (modality(v) > k) return false;
    return true;
}

int PlaneDigraph::max_modality() const {
    int m = 0;
    for (VertexId v = 0; v < n_; ++v) m = std::max(m, modality(v));
    return m;
}

bool PlaneDigraph::has_two_cycles() const {
    std::set<std::pair<VertexId, VertexId>> dir;
    for (const Edge &e : edges_) dir.insert({e.tail, e.head});
    for (const Edge &e : edges_)
        if (e.tail != e.head && dir.count({e.head, e.tail})) return true;
    return false;
}

bool PlaneDigraph::adjacent(VertexId u, VertexId v) const {
    for (EdgeEnd d : rotation_[u])
        if (dart_target(d) == v) return true;
    return false;
}

int PlaneDigraph::separating_triangles() const {
    /* Count vertex triples {u,v,w} that are pairwise adjacent but do not bound
     * a face. For internally triangulated graphs those are exactly the
     * separating triangles. Undirected view, multi-edges collapsed. */
    std::set<std::pair<VertexId, VertexId>> und;
    for (const Edge &e : edges_) {
        if (e.tail == e.head) continue;
        und.insert({std::min(e.tail, e.head), std::max(e.tail, e.head)});
    }
    std::vector<std::vector<VertexId>> nbr(n_);
    for (auto [a, b] : und) {
        nbr[a].push_back(b);
        nbr[b].push_back(a);
    }

    std::set<std::vector<VertexId>> face_triangles;
    for (const Face &f : faces_) {
        if (f.boundary.size() != 3) continue;
        std::vector<VertexId> tri;
        for (EdgeEnd d : f.boundary) tri.push_back(end_vertex(d));
        std::sort(tri.begin(), tri.end());
        if (tri[0] == tri[1] || tri[1] == tri[2]) continue;
        face_triangles.insert(tri);
    }

    int count = 0;
    for (VertexId u = 0; u < n_; ++u)
        for (VertexId v : nbr[u]) {
            if (v <= u) continue;
            for (VertexId w : nbr[v]) {
                if (w <= v) continue;
                if (!und.count({u, w})) continue;
                if (!face_triangles.count({u, v, w})) ++count;
            }
        }
    return count;
}

bool PlaneDigraph::is_irreducible_triangulation() const {
    if (n_ < 4) return false;
    std::set<std::pair<VertexId, VertexId>> und;
    for (const Edge &e : edges_) {
        if (e.tail == e.head) return false;
        auto p = std::make_pair(std::min(e.tail, e.head), std::max(e.tail, e.head));
        if (und.count(p)) return false;  // parallel edges
        und.insert(p);
    }
    for (const Face &f : faces_) {
        if (f.outer) {
            if (f.boundary.size() != 4) return false;
        } else if (f.boundary.size() != 3) {
            return false;
        }
    }
    return separating_triangles() == 0;
}

PlaneDigraph GraphBuilder::build() const {
    int n = static_cast<int>(vertices.size());
    /* remap arbitrary ids to dense ones, preserving listing order */
    std::map<VertexId, VertexId> vmap;
    for (int i = 0; i < n; ++i) {
        if (vmap.count(vertices[i].id)) throw Error("duplicate vertex id");
        vmap[vertices[i].id] = i;
    }
    std::map<EdgeId, EdgeId> emap;
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        if (emap.count(edges[i].id)) throw Error("duplicate edge id");
        emap[edges[i].id] = i;
        auto t = vmap.find(edges[i].tail), h = vmap.find(edges[i].head);
        if (t == vmap.end() || h == vmap.end()) throw Error("edge endpoint not a listed vertex");
        es.push_back(Edge{i, t->second, h->second});
    }
    std::vector<std::vector<EdgeEnd>> rot(n);
    for (int i = 0; i < n; ++i) {
        rot[i].reserve(vertices[i].rotation.size());
        for (EdgeEnd d : vertices[i].rotation) {
            auto it = emap.find(d.edge);
            if (it == emap.end()) throw Error("rotation references unknown edge id");
            rot[i].push_back(EdgeEnd{it->second, d.kind});
        }
    }
    auto wit = emap.find(outer_witness.edge);
    if (!edges.empty() && wit == emap.end()) throw Error("outer-face witness references unknown edge id");
    EdgeEnd w = edges.empty() ? EdgeEnd{} : EdgeEnd{wit->second, outer_witness.kind};
    return PlaneDigraph(n, std::move(es), std::move(rot), w);
}

namespace {

EndKind end_kind_from_string(const std::string &s) {
    if (s == "tail") return EndKind::Tail;
    if (s == "head") return EndKind::Head;
    throw Error("edge end must be \"tail\" or \"head\", got \"" + s + "\"");
}

}  // namespace

PlaneDigraph graph_from_json(const std::string &text) {
    nlohmann::json j = nlohmann::json::parse(text);
    GraphBuilder b;
    for (const auto &jv : j.at("vertices")) {
        GraphBuilder::VertexSpec vs;
        vs.id = jv.at("id").get<int>();
        for (const auto &je : jv.at("rotation"))
            vs.rotation.push_back(
                EdgeEnd{je.at(0).get<int>(), end_kind_from_string(je.at(1).get<std::string>())});
        b.vertices.push_back(std::move(vs));
    }
    for (const auto &je : j.at("edges"))
        b.edges.push_back(
            Edge{je.at("id").get<int>(), je.at("tail").get<int>(), je.at("head").get<int>()});
    if (j.contains("outer_face_witness")) {
        const auto &jw = j.at("outer_face_witness");
        b.outer_witness =
            EdgeEnd{jw.at(0).get<int>(), end_kind_from_string(jw.at(1).get<std::string>())};
    } else if (!b.edges.empty()) {
        throw Error("graph JSON lacks outer_face_witness");
    }
    return b.build();
}

std::string graph_to_json(const PlaneDigraph &g) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        nlohmann::json jv;
        jv["id"] = v;
        jv["rotation"] = nlohmann::json::array();
        for (EdgeEnd d : g.rotation(v))
            jv["rotation"].push_back({d.edge, d.kind == EndKind::Tail ? "tail" : "head"});
        j["vertices"].push_back(std::move(jv));
    }
    j["edges"] = nlohmann::json::array();
    for (const Edge &e : g.edges())
        j["edges"].push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
    if (g.num_edges() > 0) {
        EdgeEnd w = g.face(g.outer_face()).boundary.front();
        j["outer_face_witness"] = {w.edge, w.kind == EndKind::Tail ? "tail" : "head"};
    }
    return j.dump(2);
}

PlaneDigraph load_graph(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return graph_from_json(ss.str());
}

void save_graph(const PlaneDigraph &g, const std::string &path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << graph_to_json(g) << "\n";
}

}  // namespace pcod
