#include "pcod/realize.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace pcod {

namespace {

/* ---------------------------------------------------------------- fans -- */

struct Fan {
    VertexId vertex;
    std::vector<EdgeEnd> members;  // ccw order f_1..f_k
    int pivot = -1;                // index into members
    std::vector<EdgeEnd> chain;    // brancher for chain position 1..k-1 (from vertex)
};

/* Maximal runs of consecutive zero corners at v. corner(d) belongs to the
 * wedge between d and succ_ccw(d); a run of k-1 zero corners spans k ends. */
std::vector<Fan> find_fans(const PlaneDigraph &g, const Representation &r) {
    std::vector<Fan> fans;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        const auto &rot = g.rotation(v);
        int d = static_cast<int>(rot.size());
        if (d < 2) continue;
        std::vector<char> zero(d, 0);
        bool any = false, all = true;
        for (int i = 0; i < d; ++i) {
            zero[i] = r.entry(rot[i]).a == 0;
            any |= zero[i];
            all &= static_cast<bool>(zero[i]);
        }
        if (!any) continue;
        if (all) throw Error("vertex " + std::to_string(v) + " has only zero angles");
        /* scan runs starting from an index whose predecessor corner is nonzero */
        int i0 = 0;
        while (zero[(i0 + d - 1) % d]) ++i0;
        int i = i0;
        do {
            if (zero[i % d]) {
                Fan f;
                f.vertex = v;
                int j = i;
                while (zero[j % d]) {
                    f.members.push_back(rot[j % d]);
                    ++j;
                }
                f.members.push_back(rot[j % d]);  // the end with the closing non-zero corner
                fans.push_back(std::move(f));
                i = j + 1;
            } else {
                ++i;
            }
        } while ((i - i0) < d);
    }

    for (Fan &f : fans) {
        int k = static_cast<int>(f.members.size());
        /* flag pattern along ccw must be R* N? L* */
        int state = 0;  // 0: in R-prefix, 1: N seen, 2: in L-suffix
        int n_at = -1, l_count = 0;
        for (int i = 0; i < k; ++i) {
            Cover b = r.entry(f.members[i]).b;
            if (b == Cover::R) {
                if (state != 0)
                    throw Error("fan at vertex " + std::to_string(f.vertex) +
                                ": covered-bend flags inconsistent with bend-or-end structure");
            } else if (b == Cover::N) {
                if (state != 0)
                    throw Error("fan at vertex " + std::to_string(f.vertex) +
                                ": two unflagged fan members");
                state = 1;
                n_at = i;
            } else {
                state = 2;
                ++l_count;
            }
        }
        if (n_at >= 0)
            f.pivot = n_at;
        else
            f.pivot = std::max(0, k - 1 - l_count);  // last R, or f_1 when all L
        /* chain from the vertex: L-branchers f_k..f_{p+1}, then R-branchers
         * f_1..f_{p-1} (paper order v_1..v_{m-1}, v_k..v_{m+1}) */
        for (int i = k - 1; i > f.pivot; --i) f.chain.push_back(f.members[i]);
        for (int i = 0; i < f.pivot; ++i) f.chain.push_back(f.members[i]);
    }
    return fans;
}

}  // namespace

/* -------------------------------------------------------------- expand -- */

ExpandedGraph expand(const PlaneDigraph &g, const Representation &r) {
    std::vector<Fan> fans = find_fans(g, r);

    /* dart -> fan membership */
    std::vector<int> fan_of(2 * g.num_edges(), -1);
    std::vector<int> fan_pos(2 * g.num_edges(), -1);
    for (int fi = 0; fi < static_cast<int>(fans.size()); ++fi)
        for (int i = 0; i < static_cast<int>(fans[fi].members.size()); ++i) {
            fan_of[PlaneDigraph::dart_index(fans[fi].members[i])] = fi;
            fan_pos[PlaneDigraph::dart_index(fans[fi].members[i])] = i;
        }
    auto is_brancher = [&](EdgeEnd d) {
        int fi = fan_of[PlaneDigraph::dart_index(d)];
        return fi >= 0 && fans[fi].members[fans[fi].pivot] != d;
    };

    /* new vertex ids: originals, then chain vertices per fan */
    int next_v = g.num_vertices();
    std::vector<VertexId> orig_vertex(g.num_vertices());
    std::iota(orig_vertex.begin(), orig_vertex.end(), 0);
    std::vector<std::vector<VertexId>> fan_chain_vtx(fans.size());
    std::vector<int> chain_pos_of(2 * g.num_edges(), -1);  // brancher dart -> chain index
    for (int fi = 0; fi < static_cast<int>(fans.size()); ++fi) {
        for (int j = 0; j < static_cast<int>(fans[fi].chain.size()); ++j) {
            fan_chain_vtx[fi].push_back(next_v++);
            orig_vertex.push_back(-1);
            chain_pos_of[PlaneDigraph::dart_index(fans[fi].chain[j])] = j;
        }
    }

    /* node path per original edge, tail -> head */
    std::vector<std::vector<VertexId>> path(g.num_edges());
    auto side_nodes = [&](EdgeId e, EndKind kind) {
        /* node sequence adjacent to this end, starting at the attach point */
        EdgeEnd d{e, kind};
        int fi = fan_of[PlaneDigraph::dart_index(d)];
        std::vector<VertexId> seq;
        if (fi >= 0 && is_brancher(d)) {
            seq.push_back(fan_chain_vtx[fi][chain_pos_of[PlaneDigraph::dart_index(d)]]);
        } else {
            seq.push_back(g.end_vertex(d));
            if (fi >= 0) /* pivot: its own chain follows */
                for (VertexId c : fan_chain_vtx[fi]) seq.push_back(c);
        }
        return seq;
    };
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        auto tail_side = side_nodes(e, EndKind::Tail);
        auto head_side = side_nodes(e, EndKind::Head);
        std::reverse(head_side.begin(), head_side.end());
        path[e] = tail_side;
        path[e].insert(path[e].end(), head_side.begin(), head_side.end());
    }

    /* pieces */
    std::vector<Edge> new_edges;
    std::vector<EdgeId> piece_of;
    std::vector<std::vector<std::pair<EdgeId, bool>>> pieces(g.num_edges());
    std::vector<int> body_piece(g.num_edges());  // index of the piece carrying the bends
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        for (int i = 0; i + 1 < static_cast<int>(path[e].size()); ++i) {
            EdgeId pid = static_cast<EdgeId>(new_edges.size());
            new_edges.push_back(Edge{pid, path[e][i], path[e][i + 1]});
            piece_of.push_back(e);
            pieces[e].push_back({pid, true});
        }
        /* the body piece sits between the two chain blocks */
        int tail_len = 1;
        EdgeEnd dt{e, EndKind::Tail};
        int ft = fan_of[PlaneDigraph::dart_index(dt)];
        if (ft >= 0 && !is_brancher(dt)) tail_len += static_cast<int>(fan_chain_vtx[ft].size());
        body_piece[e] = tail_len - 1;
    }

    /* s-counts per piece dart */
    std::vector<int> s_dart(2 * new_edges.size(), 0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        EdgeEnd dt{e, EndKind::Tail}, dh{e, EndKind::Head};
        const RepEntry &rt = r.entry(dt);
        const RepEntry &rh = r.entry(dh);
        bool bt = is_brancher(dt), bh = is_brancher(dh);
        int s_near = rt.s - ((bt && rt.b == Cover::L) ? 1 : 0) - ((bh && rh.b == Cover::R) ? 1 : 0);
        int s_far = rh.s - ((bh && rh.b == Cover::L) ? 1 : 0) - ((bt && rt.b == Cover::R) ? 1 : 0);
        if (s_near < 0 || s_far < 0)
            throw Error("edge " + std::to_string(e) + ": covered-bend flags exceed turn counts");
        EdgeId body = pieces[e][body_piece[e]].first;
        s_dart[2 * body] = s_near;
        s_dart[2 * body + 1] = s_far;
    }

    /* rotations and corner angles */
    std::vector<std::vector<EdgeEnd>> rot(next_v);
    std::vector<int> angle;  // indexed later via dart_index over new edges
    angle.assign(2 * new_edges.size(), -1);

    auto piece_end_at = [&](EdgeId e, EndKind kind) -> EdgeEnd {
        /* the piece end adjacent to this original end's attach node */
        if (kind == EndKind::Tail) {
            auto [pid, fwd] = pieces[e].front();
            return EdgeEnd{pid, fwd ? EndKind::Tail : EndKind::Head};
        }
        auto [pid, fwd] = pieces[e].back();
        return EdgeEnd{pid, fwd ? EndKind::Head : EndKind::Tail};
    };

    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        const auto &orot = g.rotation(v);
        int d = static_cast<int>(orot.size());
        for (int i = 0; i < d; ++i) {
            EdgeEnd od = orot[i];
            int fi = fan_of[PlaneDigraph::dart_index(od)];
            if (fi >= 0 && fans[fi].vertex == v) {
                /* emit the bundle end only at the block start f_1 */
                if (od != fans[fi].members.front()) continue;
                const Fan &f = fans[fi];
                EdgeId pivot_edge = f.members[f.pivot].edge;
                EndKind pk = f.members[f.pivot].kind;
                EdgeEnd bundle = piece_end_at(pivot_edge, pk);
                rot[v].push_back(bundle);
                angle[PlaneDigraph::dart_index(bundle)] = r.entry(f.members.back()).a;
            } else {
                EdgeEnd nd = piece_end_at(od.edge, od.kind);
                rot[v].push_back(nd);
                angle[PlaneDigraph::dart_index(nd)] = r.entry(od).a;
            }
        }
    }
    /* chain vertices */
    for (int fi = 0; fi < static_cast<int>(fans.size()); ++fi) {
        const Fan &f = fans[fi];
        EdgeId pe = f.members[f.pivot].edge;
        EndKind pk = f.members[f.pivot].kind;
        /* the pivot's chain pieces: first chain piece touches the fan vertex */
        int base = (pk == EndKind::Tail) ? 0 : static_cast<int>(pieces[pe].size()) - 1;
        int step = (pk == EndKind::Tail) ? 1 : -1;
        for (int j = 0; j < static_cast<int>(f.chain.size()); ++j) {
            VertexId c = fan_chain_vtx[fi][j];
            auto [down_pid, down_fwd] = pieces[pe][base + step * j];
            auto [up_pid, up_fwd] = pieces[pe][base + step * (j + 1)];
            /* ends at c */
            EdgeEnd down{down_pid, (new_edges[down_pid].tail == c) ? EndKind::Tail : EndKind::Head};
            EdgeEnd up{up_pid, (new_edges[up_pid].tail == c) ? EndKind::Tail : EndKind::Head};
            EdgeEnd brancher_end = piece_end_at(f.chain[j].edge, f.chain[j].kind);
            Cover flag = r.entry(f.chain[j]).b;
            if (flag == Cover::L) {
                rot[c] = {up, brancher_end, down};
                angle[PlaneDigraph::dart_index(up)] = 1;
                angle[PlaneDigraph::dart_index(brancher_end)] = 1;
                angle[PlaneDigraph::dart_index(down)] = 2;
            } else if (flag == Cover::R) {
                rot[c] = {brancher_end, up, down};
                angle[PlaneDigraph::dart_index(brancher_end)] = 1;
                angle[PlaneDigraph::dart_index(up)] = 2;
                angle[PlaneDigraph::dart_index(down)] = 1;
            } else {
                throw Error("fan chain holds an unflagged brancher");
            }
        }
    }

    for (int di = 0; di < static_cast<int>(angle.size()); ++di)
        if (angle[di] < 0) throw Error("internal: missing corner angle after expansion");

    /* trace once with a provisional witness, locate the -4 face, rebuild */
    PlaneDigraph provisional(next_v, new_edges, rot, EdgeEnd{0, EndKind::Tail});
    FaceId outer = -1;
    for (int f = 0; f < static_cast<int>(provisional.faces().size()); ++f) {
        int sum = 0;
        for (EdgeEnd d : provisional.face(f).boundary) {
            int di = PlaneDigraph::dart_index(d);
            int tw = PlaneDigraph::dart_index(d.twin());
            sum += 2 - angle[di] + s_dart[di] - s_dart[tw];
        }
        if (sum == -4) {
            if (outer != -1) throw Error("internal: two faces with rotation -4");
            outer = f;
        } else if (sum != 4) {
            throw Error("internal: expanded face has rotation " + std::to_string(sum));
        }
    }
    if (outer == -1) throw Error("internal: no outer face after expansion");

    EdgeEnd witness = provisional.face(outer).boundary.front();
    ExpandedGraph out{PlaneDigraph(next_v, new_edges, rot, witness), Representation(),
                      std::move(orig_vertex), std::move(piece_of), std::move(pieces)};
    std::vector<Representation::FaceList> fls(out.graph.faces().size());
    for (int f = 0; f < static_cast<int>(out.graph.faces().size()); ++f) {
        fls[f].outer = out.graph.face(f).outer;
        for (EdgeEnd d : out.graph.face(f).boundary) {
            int di = PlaneDigraph::dart_index(d);
            fls[f].entries.push_back(RepEntry{d, angle[di], s_dart[di], Cover::N});
        }
    }
    out.rep = Representation(out.graph, std::move(fls));
    return out;
}

/* ------------------------------------------------------------- compact -- */

namespace {

/* Mutable orthogonal mesh: straight segments, ccw rotations, per-corner
 * angles in quarter turns, per-dart absolute headings. Dart 2s departs
 * seg[s].v[0]; twin via ^1. */
struct Mesh {
    struct Seg {
        int v[2];
    };
    std::vector<Seg> segs;
    std::vector<std::vector<int>> rot;
    std::vector<int> angle;   // per dart
    std::vector<int> dir;     // per dart, 0=E 1=N 2=W 3=S
    std::vector<int> rotpos;  // per dart

    int vert_of(int dart) const { return segs[dart >> 1].v[dart & 1]; }
    int target_of(int dart) const { return segs[dart >> 1].v[(dart & 1) ^ 1]; }
    static int twin(int dart) { return dart ^ 1; }

    int add_vertex() {
        rot.emplace_back();
        return static_cast<int>(rot.size()) - 1;
    }
    int add_seg(int a, int b) {
        segs.push_back({{a, b}});
        angle.resize(2 * segs.size(), -1);
        dir.resize(2 * segs.size(), -1);
        rotpos.resize(2 * segs.size(), -1);
        return static_cast<int>(segs.size()) - 1;
    }
    void reindex(int v) {
        for (int i = 0; i < static_cast<int>(rot[v].size()); ++i) rotpos[rot[v][i]] = i;
    }
    int succ_ccw(int d) const {
        int v = vert_of(d);
        return rot[v][(rotpos[d] + 1) % rot[v].size()];
    }
    int pred_ccw(int d) const {
        int v = vert_of(d);
        return rot[v][(rotpos[d] + rot[v].size() - 1) % rot[v].size()];
    }
    int next_in_face(int d) const { return pred_ccw(twin(d)); }

    void check() const {
        for (size_t v = 0; v < rot.size(); ++v) {
            int sum = 0;
            for (int d : rot[v]) sum += angle[d];
            if (!rot[v].empty() && sum != 4)
                throw Error("mesh: angle sum at vertex " + std::to_string(v) + " is " +
                            std::to_string(sum));
        }
        for (size_t d = 0; d < 2 * segs.size(); ++d) {
            if (dir[twin(static_cast<int>(d))] != (dir[d] + 2) % 4)
                throw Error("mesh: twin headings inconsistent");
            int s = succ_ccw(static_cast<int>(d));
            if (dir[s] != (dir[d] + angle[d]) % 4) throw Error("mesh: corner headings inconsistent");
        }
    }
};

struct FaceWalk {
    std::vector<int> darts;
    int rotation = 0;  // sum of (2 - angle at each corner)
};

std::vector<FaceWalk> trace_mesh(const Mesh &m, std::vector<int> *face_of = nullptr) {
    std::vector<FaceWalk> out;
    std::vector<int> fo(2 * m.segs.size(), -1);
    for (int d0 = 0; d0 < static_cast<int>(2 * m.segs.size()); ++d0) {
        if (fo[d0] != -1) continue;
        FaceWalk f;
        int d = d0;
        do {
            fo[d] = static_cast<int>(out.size());
            f.darts.push_back(d);
            f.rotation += 2 - m.angle[d];
            d = m.next_in_face(d);
        } while (d != d0);
        out.push_back(std::move(f));
    }
    if (face_of) *face_of = std::move(fo);
    return out;
}

/* Insert a new edge end at vertex v inside the corner owned by dart t,
 * with the new ray at dir `delta`. Returns nothing; caller created the
 * segment and passes its dart at v. */
void split_corner(Mesh &m, int t, int new_dart, int delta) {
    int v = m.vert_of(t);
    int a_old = m.angle[t];
    int a1 = ((delta - m.dir[t]) % 4 + 4) % 4;
    if (a1 <= 0 || a1 >= a_old)
        throw Error("mesh: corner split outside the wedge");
    m.angle[t] = a1;
    m.angle[new_dart] = a_old - a1;
    m.dir[new_dart] = delta;
    m.dir[Mesh::twin(new_dart)] = (delta + 2) % 4;
    auto &rv = m.rot[v];
    rv.insert(rv.begin() + m.rotpos[t] + 1, new_dart);
    m.reindex(v);
}

/* Split the segment of dart h with a fresh degree-2 straight vertex.
 * Returns the new vertex; dart h keeps its origin and now ends at w. */
int split_segment(Mesh &m, int h, int *fwd_dart_out) {
    int s = h >> 1;
    int w = m.add_vertex();
    int x = m.vert_of(h);
    int y = m.target_of(h);
    int h_dir = m.dir[h];
    /* reuse seg s for x--w, add new seg w--y */
    int far_end_dart = Mesh::twin(h);  // departs y
    int far_angle = m.angle[far_end_dart];
    int far_pos = m.rotpos[far_end_dart];
    m.segs[s].v[h & 1] = x;
    m.segs[s].v[(h & 1) ^ 1] = w;
    int s2 = m.add_seg(w, y);
    int d_wy = 2 * s2;      // departs w toward y
    int d_yw = 2 * s2 + 1;  // departs y toward w
    m.dir[d_wy] = h_dir;
    m.dir[d_yw] = (h_dir + 2) % 4;
    m.angle[d_yw] = far_angle;
    m.rot[y][far_pos] = d_yw;
    m.reindex(y);
    /* w: straight corners; ccw order (back-toward-x, fwd-toward-y) */
    int d_wx = Mesh::twin(h);  // now departs w toward x
    m.dir[d_wx] = (h_dir + 2) % 4;
    m.angle[d_wx] = 2;
    m.angle[d_wy] = 2;
    m.rot[w] = {d_wx, d_wy};
    m.reindex(w);
    if (fwd_dart_out) *fwd_dart_out = d_wy;
    return w;
}

}  // namespace

OrthoDrawing compact(const PlaneDigraph &g, const ExpandedGraph &x) {
    OrthoDrawing out;
    out.vertex_pos.resize(g.num_vertices());
    out.edge_path.resize(g.num_edges());
    if (g.num_edges() == 0) {
        for (VertexId v = 0; v < g.num_vertices(); ++v)
            out.vertex_pos[v] = Point{v, v};
        return out;
    }

    const PlaneDigraph &gr = x.graph;
    const Representation &rr = x.rep;

    Mesh m;
    for (int v = 0; v < gr.num_vertices(); ++v) m.add_vertex();

    /* piece -> chain of mesh vertices [u, bends..., w] along the piece */
    std::vector<std::vector<int>> piece_nodes(gr.num_edges());
    std::vector<std::vector<int>> piece_end_dart(gr.num_edges());  // [dart at tail, dart at head]
    for (EdgeId p = 0; p < gr.num_edges(); ++p) {
        int u = gr.edge(p).tail, w = gr.edge(p).head;
        int sl = rr.entry({p, EndKind::Tail}).s;  // left turns from tail
        int sr = rr.entry({p, EndKind::Head}).s;  // left turns from head = rights from tail
        piece_nodes[p].push_back(u);
        std::vector<int> turns;  // +1 left, -1 right, traversed tail->head
        for (int i = 0; i < sl; ++i) turns.push_back(+1);
        for (int i = 0; i < sr; ++i) turns.push_back(-1);
        int prev = u;
        std::vector<int> seg_ids;
        for (int i = 0; i < static_cast<int>(turns.size()); ++i) {
            int b = m.add_vertex();
            piece_nodes[p].push_back(b);
            seg_ids.push_back(m.add_seg(prev, b));
            prev = b;
        }
        piece_nodes[p].push_back(w);
        seg_ids.push_back(m.add_seg(prev, w));
        /* bend vertex rotations: L -> (up, down) a=1,3 ; R -> (down, up) a=1,3 */
        for (int i = 0; i < static_cast<int>(turns.size()); ++i) {
            int bvtx = piece_nodes[p][i + 1];
            int d_down = 2 * seg_ids[i] + 1;  // departs bvtx toward tail side
            int d_up = 2 * seg_ids[i + 1];    // departs bvtx toward head side
            if (turns[i] > 0) {
                m.rot[bvtx] = {d_up, d_down};
                m.angle[d_up] = 1;
                m.angle[d_down] = 3;
            } else {
                m.rot[bvtx] = {d_down, d_up};
                m.angle[d_down] = 1;
                m.angle[d_up] = 3;
            }
            m.reindex(bvtx);
        }
        piece_end_dart[p] = {2 * seg_ids.front(), 2 * seg_ids.back() + 1};
    }

    /* rotations of G_R vertices, angles from R' */
    for (int v = 0; v < gr.num_vertices(); ++v) {
        for (EdgeEnd d : gr.rotation(v)) {
            int md = piece_end_dart[d.edge][d.kind == EndKind::Tail ? 0 : 1];
            m.rot[v].push_back(md);
            m.angle[md] = rr.entry(d).a;
        }
        m.reindex(v);
    }

    /* headings: seed a tail dart of some original edge with North */
    {
        EdgeId e0 = 0;
        VertexId vt = g.edge(e0).tail;
        EdgeEnd seed_end{e0, EndKind::Tail};
        /* if the tail end is a brancher its bundle is carried by another
         * edge; any out-end attached directly at vt works, and one exists */
        EdgeEnd at = seed_end;
        {
            bool direct = false;
            for (EdgeEnd d : gr.rotation(vt))
                if (x.piece_of[d.edge] == e0) direct = true;
            if (!direct) {
                for (EdgeEnd cand : g.rotation(vt)) {
                    if (!g.outgoing(cand)) continue;
                    bool dd = false;
                    for (EdgeEnd d : gr.rotation(vt))
                        if (x.piece_of[d.edge] == cand.edge) dd = true;
                    if (dd) {
                        at = cand;
                        break;
                    }
                }
            }
        }
        /* mesh dart at vt whose piece belongs to `at`'s edge */
        int seed = -1;
        for (EdgeEnd d : gr.rotation(vt))
            if (x.piece_of[d.edge] == at.edge) {
                seed = piece_end_dart[d.edge][d.kind == EndKind::Tail ? 0 : 1];
                break;
            }
        if (seed < 0) throw Error("internal: no seed dart for heading assignment");
        std::vector<int> stack = {seed};
        m.dir[seed] = 1;
        while (!stack.empty()) {
            int d = stack.back();
            stack.pop_back();
            int tw = Mesh::twin(d);
            int want_tw = (m.dir[d] + 2) % 4;
            if (m.dir[tw] == -1) {
                m.dir[tw] = want_tw;
                stack.push_back(tw);
            } else if (m.dir[tw] != want_tw) {
                throw Error("representation is not orientable");
            }
            int s = m.succ_ccw(d);
            int want_s = (m.dir[d] + m.angle[d]) % 4;
            if (m.dir[s] == -1) {
                m.dir[s] = want_s;
                stack.push_back(s);
            } else if (m.dir[s] != want_s) {
                throw Error("representation is not orientable");
            }
            int p = m.pred_ccw(d);
            int want_p = ((m.dir[d] - m.angle[p]) % 4 + 4) % 4;
            if (m.dir[p] == -1) {
                m.dir[p] = want_p;
                stack.push_back(p);
            } else if (m.dir[p] != want_p) {
                throw Error("representation is not orientable");
            }
        }
        for (int d = 0; d < static_cast<int>(2 * m.segs.size()); ++d)
            if (m.dir[d] == -1) throw Error("internal: heading propagation left a dart unset");
    }
    m.check();

    /* surround with a box and refine every inner face to rectangles */
    {
        std::vector<int> face_of;
        auto faces = trace_mesh(m, &face_of);
        int outer = -1;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f)
            if (faces[f].rotation == -4) outer = f;
        if (outer < 0) throw Error("internal: mesh has no outer face");

        /* box corners SW, SE, NE, NW with inner darts heading E,N,W,S */
        int sw = m.add_vertex(), se = m.add_vertex(), ne = m.add_vertex(), nw = m.add_vertex();
        int s_bot = m.add_seg(sw, se), s_right = m.add_seg(se, ne), s_top = m.add_seg(ne, nw),
            s_left = m.add_seg(nw, sw);
        auto set_box = [&](int seg, int inner_dir) {
            m.dir[2 * seg] = inner_dir;
            m.dir[2 * seg + 1] = (inner_dir + 2) % 4;
        };
        set_box(s_bot, 0);
        set_box(s_right, 1);
        set_box(s_top, 2);
        set_box(s_left, 3);
        auto corner_rot = [&](int v, int d_in_dart, int d_out_dart) {
            /* ccw rotation of a box corner: (outgoing with smaller ray first) */
            m.rot[v] = {d_out_dart, d_in_dart};
            m.angle[d_out_dart] = 1;
            m.angle[d_in_dart] = 3;
            m.reindex(v);
        };
        corner_rot(sw, 2 * s_left + 1, 2 * s_bot);
        corner_rot(se, 2 * s_bot + 1, 2 * s_right);
        corner_rot(ne, 2 * s_right + 1, 2 * s_top);
        corner_rot(nw, 2 * s_top + 1, 2 * s_left);

        /* connector from a wide outer corner to the matching box side */
        int t = -1;
        for (int d : faces[outer].darts)
            if (m.angle[d] >= 3) {
                t = d;
                break;
            }
        if (t < 0) throw Error("internal: outer face lacks a wide corner");
        int delta = (m.dir[m.succ_ccw(t)] + 2) % 4;
        int side_seg = (delta == 1) ? s_top : (delta == 3) ? s_bot : (delta == 0) ? s_right : s_left;
        int side_inner = 2 * side_seg;  // inner dart of that side
        if ((m.dir[side_inner] + 4 - delta) % 4 != 1)
            side_inner = Mesh::twin(side_inner);
        int w0 = split_segment(m, side_inner, nullptr);
        int conn = m.add_seg(m.vert_of(t), w0);
        int conn_at_z = 2 * conn, conn_at_w = 2 * conn + 1;
        split_corner(m, t, conn_at_z, delta);
        /* at w0: rotation (fwd, conn, back), corners 1,1,2 */
        {
            int d_back = -1, d_fwd = -1;
            for (int d : m.rot[w0])
                if (m.dir[d] == (delta + 1) % 4)
                    d_fwd = d;
                else
                    d_back = d;
            m.dir[conn_at_w] = (delta + 2) % 4;
            m.dir[conn_at_z] = delta;
            m.rot[w0] = {d_fwd, conn_at_w, d_back};
            m.angle[d_fwd] = 1;
            m.angle[conn_at_w] = 1;
            m.angle[d_back] = 2;
            m.reindex(w0);
        }
        m.check();
    }

    /* refinement: eliminate wide corners from all inner faces */
    for (;;) {
        auto faces = trace_mesh(m);
        int reflex = -1;
        for (const FaceWalk &f : faces) {
            if (f.rotation == -4) continue;  // the box outside
            if (f.rotation != 4) throw Error("internal: refined face rotation not 4");
            for (size_t i = 0; i < f.darts.size(); ++i)
                if (m.angle[f.darts[i]] >= 3) {
                    reflex = f.darts[i];
                    break;
                }
            if (reflex >= 0) break;
        }
        if (reflex < 0) break;

        int t = reflex;
        int delta = (m.dir[m.succ_ccw(t)] + 2) % 4;
        int need = m.angle[t] - 1;
        int rprime = 0, hit = -1;
        int d = t;
        for (size_t guard = 0; guard <= 2 * m.segs.size() + 4; ++guard) {
            int nd = m.next_in_face(d);
            rprime += 2 - m.angle[nd];
            d = nd;
            if (rprime == need && d != t) {
                hit = d;
                break;
            }
        }
        if (hit < 0) throw Error("internal: refinement ray found no target");
        if (m.dir[hit] != (delta + 1) % 4)
            throw Error("internal: refinement ray hit a dart with wrong heading");
        int w = -1;
        {
            int fwd;
            w = split_segment(m, hit, &fwd);
            int conn = m.add_seg(m.vert_of(t), w);
            int conn_at_z = 2 * conn, conn_at_w = 2 * conn + 1;
            split_corner(m, t, conn_at_z, delta);
            int d_back = -1, d_fwd = -1;
            for (int dd : m.rot[w])
                if (m.dir[dd] == (delta + 1) % 4)
                    d_fwd = dd;
                else
                    d_back = dd;
            m.dir[conn_at_w] = (delta + 2) % 4;
            m.rot[w] = {d_fwd, conn_at_w, d_back};
            m.angle[d_fwd] = 1;
            m.angle[conn_at_w] = 1;
            m.angle[d_back] = 2;
            m.reindex(w);
        }
    }
    m.check();

    /* coordinates: contract vertical segments for x, horizontal for y,
     * then longest path along the perpendicular edges */
    int nv = static_cast<int>(m.rot.size());
    std::vector<int> xcls(nv), ycls(nv);
    std::iota(xcls.begin(), xcls.end(), 0);
    std::iota(ycls.begin(), ycls.end(), 0);
    std::function<int(std::vector<int> &, int)> find = [&](std::vector<int> &p, int a) {
        while (p[a] != a) a = p[a] = p[p[a]];
        return a;
    };
    for (int s = 0; s < static_cast<int>(m.segs.size()); ++s) {
        int a = m.segs[s].v[0], b = m.segs[s].v[1];
        if (m.dir[2 * s] % 2 == 1)
            xcls[find(xcls, a)] = find(xcls, b);
        else
            ycls[find(ycls, a)] = find(ycls, b);
    }
    auto longest = [&](std::vector<int> &cls, int horiz_dir) {
        std::vector<std::vector<std::pair<int, int>>> adj(nv);
        std::vector<int> indeg(nv, 0);
        for (int s = 0; s < static_cast<int>(m.segs.size()); ++s) {
            int d = 2 * s;
            if (m.dir[d] % 2 != horiz_dir % 2) continue;
            int from = m.vert_of(d), to = m.target_of(d);
            if (m.dir[d] != horiz_dir) std::swap(from, to);
            int a = find(cls, from), b = find(cls, to);
            adj[a].push_back({b, 1});
            ++indeg[b];
        }
        std::vector<long long> dist(nv, 0);
        std::vector<int> q;
        for (int v = 0; v < nv; ++v)
            if (find(cls, v) == v && indeg[v] == 0) q.push_back(v);
        size_t qi = 0;
        int seen = 0;
        while (qi < q.size()) {
            int a = q[qi++];
            ++seen;
            for (auto [b, w] : adj[a]) {
                dist[b] = std::max(dist[b], dist[a] + w);
                if (--indeg[b] == 0) q.push_back(b);
            }
        }
        int classes = 0;
        for (int v = 0; v < nv; ++v)
            if (find(cls, v) == v) ++classes;
        if (seen != classes) throw Error("internal: compaction constraint graph has a cycle");
        return dist;
    };
    auto xdist = longest(xcls, 0);  // arcs point East
    auto ydist = longest(ycls, 1);  // arcs point North
    std::vector<Point> mpos(nv);
    for (int v = 0; v < nv; ++v)
        mpos[v] = Point{xdist[find(xcls, v)], ydist[find(ycls, v)]};

    /* assemble original edge polylines */
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        std::vector<Point> raw;
        std::set<std::pair<long long, long long>> chain_pts;
        {
            /* chain vertices on this edge's own path (branch points) */
            for (auto [pid, fwd] : x.pieces[e]) {
                (void)fwd;
                for (int end = 0; end < 2; ++end) {
                    int vtx = end == 0 ? gr.edge(pid).tail : gr.edge(pid).head;
                    if (x.orig_vertex[vtx] == -1) chain_pts.insert({mpos[vtx].x, mpos[vtx].y});
                }
            }
        }
        for (size_t i = 0; i < x.pieces[e].size(); ++i) {
            auto [pid, fwd] = x.pieces[e][i];
            std::vector<int> nodes = piece_nodes[pid];
            if (!fwd) std::reverse(nodes.begin(), nodes.end());
            for (size_t j = (i == 0 ? 0 : 1); j < nodes.size(); ++j) raw.push_back(mpos[nodes[j]]);
        }
        /* drop collinear interior points (chain vertices, straight joints) */
        std::vector<Point> pts;
        std::vector<bool> covered;
        pts.push_back(raw.front());
        for (size_t i = 1; i + 1 < raw.size(); ++i) {
            Point a = pts.back(), b = raw[i], c = raw[i + 1];
            bool collinear = (a.x == b.x && b.x == c.x) || (a.y == b.y && b.y == c.y);
            if (collinear) continue;
            pts.push_back(b);
            covered.push_back(chain_pts.count({b.x, b.y}) > 0);
        }
        pts.push_back(raw.back());
        out.edge_path[e].pts = std::move(pts);
        out.edge_path[e].covered = std::move(covered);
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) out.vertex_pos[v] = mpos[v];

    /* PCOD orientation: rotate a quarter turn if tails start horizontally */
    {
        const auto &p = out.edge_path[0].pts;
        if (p[0].x != p[1].x) {
            for (auto &vp : out.vertex_pos) vp = Point{-vp.y, vp.x};
            for (auto &ep : out.edge_path)
                for (auto &pt : ep.pts) pt = Point{-pt.y, pt.x};
        }
    }

    /* distinct vertex coordinates: spread tied strips onto fresh lanes */
    for (int axis = 0; axis < 2; ++axis) {
        auto coord = [&](Point p) { return axis == 0 ? p.x : p.y; };
        auto other = [&](Point p) { return axis == 0 ? p.y : p.x; };
        struct Item {
            long long lo, hi;
            int strip = -1;
        };
        std::map<long long, std::vector<Item>> cols;  // lane groups per coordinate
        auto add_interval = [&](long long c, long long a, long long b) {
            cols[c].push_back({std::min(a, b), std::max(a, b), -1});
        };
        for (VertexId v = 0; v < g.num_vertices(); ++v)
            add_interval(coord(out.vertex_pos[v]), other(out.vertex_pos[v]),
                         other(out.vertex_pos[v]));
        for (const auto &ep : out.edge_path)
            for (size_t i = 0; i + 1 < ep.pts.size(); ++i)
                if (coord(ep.pts[i]) == coord(ep.pts[i + 1]))
                    add_interval(coord(ep.pts[i]), other(ep.pts[i]), other(ep.pts[i + 1]));
        /* merge overlapping intervals into strips, order strips, renumber */
        std::map<long long, std::vector<std::pair<long long, long long>>> strips;
        for (auto &[c, items] : cols) {
            std::sort(items.begin(), items.end(),
                      [](const Item &a, const Item &b) { return a.lo < b.lo; });
            std::vector<std::pair<long long, long long>> merged;
            for (const Item &it : items) {
                if (!merged.empty() && it.lo <= merged.back().second)
                    merged.back().second = std::max(merged.back().second, it.hi);
                else
                    merged.push_back({it.lo, it.hi});
            }
            strips[c] = std::move(merged);
        }
        std::map<std::pair<long long, long long>, long long> lane_of;  // (coord, strip idx)
        long long next = 0;
        for (auto &[c, ms] : strips)
            for (size_t i = 0; i < ms.size(); ++i) lane_of[{c, static_cast<long long>(i)}] = next++;
        auto strip_index = [&](long long c, long long o) {
            const auto &ms = strips[c];
            int lo = 0, hi = static_cast<int>(ms.size()) - 1;
            while (lo < hi) {
                int mid = (lo + hi + 1) / 2;
                if (ms[mid].first <= o)
                    lo = mid;
                else
                    hi = mid - 1;
            }
            return static_cast<long long>(lo);
        };
        auto remap = [&](Point &p) {
            long long c = coord(p);
            long long lane = lane_of[{c, strip_index(c, other(p))}];
            if (axis == 0)
                p.x = lane;
            else
                p.y = lane;
        };
        for (auto &vp : out.vertex_pos) remap(vp);
        for (auto &ep : out.edge_path)
            for (auto &pt : ep.pts) remap(pt);
    }

    return out;
}

OrthoDrawing realize(const PlaneDigraph &g, const Representation &r) {
    return compact(g, expand(g, r));
}

}  // namespace pcod
