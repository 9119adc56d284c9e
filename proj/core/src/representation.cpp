#include "pcod/representation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pcod {

Representation::Representation(const PlaneDigraph &g, std::vector<FaceList> faces)
    : faces_(std::move(faces)) {
    if (static_cast<int>(faces_.size()) != static_cast<int>(g.faces().size()))
        throw Error("representation face count differs from graph");
    pos_.assign(2 * g.num_edges(), {-1, -1});
    for (int f = 0; f < num_faces(); ++f) {
        const Face &gf = g.face(f);
        if (faces_[f].entries.size() != gf.boundary.size())
            throw Error("face " + std::to_string(f) + " entry count mismatch");
        faces_[f].outer = gf.outer;
        if (gf.outer) outer_ = f;
        /* allow any circular shift of the traced boundary */
        if (!gf.boundary.empty()) {
            EdgeEnd first = faces_[f].entries[0].dart;
            int off = -1;
            for (int i = 0; i < static_cast<int>(gf.boundary.size()); ++i)
                if (gf.boundary[i] == first) {
                    off = i;
                    break;
                }
            if (off < 0) throw Error("face entries do not match traced boundary");
            for (int i = 0; i < static_cast<int>(gf.boundary.size()); ++i)
                if (faces_[f].entries[i].dart !=
                    gf.boundary[(off + i) % gf.boundary.size()])
                    throw Error("face entry order does not match traced boundary");
        }
        for (int i = 0; i < static_cast<int>(faces_[f].entries.size()); ++i) {
            int di = PlaneDigraph::dart_index(faces_[f].entries[i].dart);
            if (pos_[di].first != -1) throw Error("dart appears twice in representation");
            pos_[di] = {f, i};
        }
    }
    for (int di = 0; di < static_cast<int>(pos_.size()); ++di)
        if (pos_[di].first == -1) throw Error("dart missing from representation");
}

Representation Representation::skeleton(const PlaneDigraph &g) {
    std::vector<FaceList> fl(g.faces().size());
    for (int f = 0; f < static_cast<int>(g.faces().size()); ++f) {
        fl[f].outer = g.face(f).outer;
        for (EdgeEnd d : g.face(f).boundary) fl[f].entries.push_back(RepEntry{d, 0, 0, Cover::N});
    }
    return Representation(g, std::move(fl));
}

const RepEntry &Representation::pred(const RepEntry &r) const {
    auto [f, i] = pos_[PlaneDigraph::dart_index(r.dart)];
    const auto &es = faces_[f].entries;
    return es[(i + es.size() - 1) % es.size()];
}

bool corner_is_switch(const PlaneDigraph &g, EdgeEnd d) {
    EdgeEnd nxt = g.succ_ccw(d);
    return g.outgoing(d) == g.outgoing(nxt);
}

int rotation(const PlaneDigraph &g, const Representation &r, FaceId f) {
    (void)g;
    int sum = 0;
    for (const RepEntry &e : r.faces()[f].entries)
        sum += 2 - e.a + e.s - r.twin(e).s;
    return sum;
}

std::string FeasibilityReport::summary() const {
    auto line = [](const char *name, const Item &it) {
        std::string s = std::string(name) + ": " + (it.ok ? "ok" : "FAIL");
        for (const auto &o : it.offenders) s += "\n    " + o;
        return s + "\n";
    };
    std::string out;
    out += line("structure", structure);
    out += line("(i) rotation", rotation);
    out += line("(ii) angular sum", angular_sum);
    out += line("(iii) covered bends", covered);
    out += line("(iv) bend-or-end", bend_or_end);
    out += line("(v) odd bends", parity);
    out += std::string("feasible: ") + (feasible() ? "yes" : "no") + "\n";
    return out;
}

FeasibilityReport validate(const PlaneDigraph &g, const Representation &r) {
    FeasibilityReport rep;
    auto fail = [](FeasibilityReport::Item &it, const std::string &msg) {
        it.ok = false;
        if (it.offenders.size() < 32) it.offenders.push_back(msg);
    };

    for (const auto &fl : r.faces())
        for (const RepEntry &e : fl.entries) {
            if (e.a < 0 || e.a > 4)
                fail(rep.structure, "entry of edge " + std::to_string(e.dart.edge) +
                                        " has angle outside 0..4 quarter-turns");
            if (e.s < 0)
                fail(rep.structure,
                     "entry of edge " + std::to_string(e.dart.edge) + " has negative s");
            bool sw = corner_is_switch(g, e.dart);
            if ((e.a % 2 == 0) != sw)
                fail(rep.structure, "edge " + std::to_string(e.dart.edge) + " at vertex " +
                                        std::to_string(g.end_vertex(e.dart)) +
                                        ": angle parity disagrees with switch structure");
        }

    for (int f = 0; f < r.num_faces(); ++f) {
        if (r.faces()[f].entries.empty()) continue;
        int want = r.faces()[f].outer ? -4 : 4;
        int got = rotation(g, r, f);
        if (got != want)
            fail(rep.rotation, "face " + std::to_string(f) + " has rotation " +
                                   std::to_string(got) + ", expected " + std::to_string(want));
    }

    std::vector<int> angle_sum(g.num_vertices(), 0);
    for (const auto &fl : r.faces())
        for (const RepEntry &e : fl.entries) angle_sum[g.end_vertex(e.dart)] += e.a;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) > 0 && angle_sum[v] != 4)
            fail(rep.angular_sum, "vertex " + std::to_string(v) + " has angle sum " +
                                      std::to_string(angle_sum[v]) + "/4 quarter-turns");

    for (const auto &fl : r.faces())
        for (const RepEntry &e : fl.entries) {
            const RepEntry &tw = r.twin(e);
            int need = (e.b == Cover::L ? 1 : 0) + (tw.b == Cover::R ? 1 : 0);
            if (e.s < need)
                fail(rep.covered, "edge " + std::to_string(e.dart.edge) + " from vertex " +
                                      std::to_string(g.end_vertex(e.dart)) + ": s=" +
                                      std::to_string(e.s) + " below covered-bend demand " +
                                      std::to_string(need));
        }

    for (const auto &fl : r.faces())
        for (const RepEntry &e : fl.entries) {
            if (e.a != 0) continue;
            const RepEntry &p = r.pred(e);
            const RepEntry &ptw = r.twin(p);
            if (!(e.b == Cover::R || ptw.b == Cover::L))
                fail(rep.bend_or_end,
                     "zero angle at vertex " + std::to_string(g.end_vertex(e.dart)) +
                         " between edges " + std::to_string(e.dart.edge) + " and " +
                         std::to_string(p.dart.edge) + " lacks the covered bend");
        }

    for (EdgeId e = 0; e < g.num_edges(); ++e)
        if (r.total_bends(e) % 2 == 0)
            fail(rep.parity, "edge " + std::to_string(e) + " has even bend count " +
                                 std::to_string(r.total_bends(e)));

    return rep;
}

int edge_split(const Representation &r, EdgeId e) {
    int total = r.total_bends(e);
    if (total % 2 == 0) throw Error("edge " + std::to_string(e) + " violates odd-bend parity");
    return (total - 1) / 2;
}

int split_complexity(const PlaneDigraph &g, const Representation &r) {
    int k = 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) k = std::max(k, edge_split(r, e));
    return k;
}

Representation eliminate_zigzags(const PlaneDigraph &g, const Representation &r) {
    Representation out = r;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        EdgeEnd d{e, EndKind::Tail};
        RepEntry &a = out.entry(d);
        RepEntry &b = out.entry(d.twin());
        int covered_left = (a.b == Cover::L ? 1 : 0) + (b.b == Cover::R ? 1 : 0);
        int covered_right = (b.b == Cover::L ? 1 : 0) + (a.b == Cover::R ? 1 : 0);
        int uncov_l = a.s - covered_left;
        int uncov_r = b.s - covered_right;
        if (uncov_l < 0 || uncov_r < 0)
            throw Error("edge " + std::to_string(e) +
                        ": covered-bend flags exceed turn counts; cancellation would consume a "
                        "covered bend");
        int m = std::min(uncov_l, uncov_r);
        a.s -= m;
        b.s -= m;
    }
    return out;
}

bool equal_up_to_rotation(const Representation &a, const Representation &b) {
    if (a.num_faces() != b.num_faces()) return false;
    auto same_entry = [](const RepEntry &x, const RepEntry &y) {
        return x.dart == y.dart && x.a == y.a && x.s == y.s && x.b == y.b;
    };
    for (int f = 0; f < a.num_faces(); ++f) {
        const auto &ea = a.faces()[f].entries;
        if (ea.empty()) continue;
        /* locate the face of b holding ea[0].dart */
        const Representation::FaceList *match = nullptr;
        int off = -1;
        for (const auto &fb : b.faces()) {
            for (int i = 0; i < static_cast<int>(fb.entries.size()); ++i)
                if (fb.entries[i].dart == ea[0].dart) {
                    match = &fb;
                    off = i;
                    break;
                }
            if (match) break;
        }
        if (!match || match->entries.size() != ea.size()) return false;
        if (match->outer != a.faces()[f].outer) return false;
        for (int i = 0; i < static_cast<int>(ea.size()); ++i)
            if (!same_entry(ea[i], match->entries[(off + i) % ea.size()])) return false;
    }
    return true;
}

namespace {

const char *cover_name(Cover c) {
    switch (c) {
        case Cover::L: return "L";
        case Cover::R: return "R";
        default: return "N";
    }
}

Cover cover_from(const std::string &s) {
    if (s == "L") return Cover::L;
    if (s == "R") return Cover::R;
    if (s == "N") return Cover::N;
    throw Error("bad cover flag \"" + s + "\"");
}

}  // namespace

std::string representation_to_json(const PlaneDigraph &g, const Representation &r) {
    nlohmann::json j;
    j["faces"] = nlohmann::json::array();
    for (const auto &fl : r.faces()) {
        nlohmann::json jf;
        jf["outer"] = fl.outer;
        jf["entries"] = nlohmann::json::array();
        for (const RepEntry &e : fl.entries) {
            nlohmann::json je;
            je["edge"] = e.dart.edge;
            je["from"] = g.end_vertex(e.dart);
            je["a"] = e.a;
            je["s"] = e.s;
            je["b"] = cover_name(e.b);
            const Edge &ge = g.edge(e.dart.edge);
            if (ge.tail == ge.head)
                je["end"] = e.dart.kind == EndKind::Tail ? "tail" : "head";
            jf["entries"].push_back(std::move(je));
        }
        j["faces"].push_back(std::move(jf));
    }
    return j.dump(2);
}

Representation representation_from_json(const PlaneDigraph &g, const std::string &text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<std::vector<RepEntry>> parsed;
    for (const auto &jf : j.at("faces")) {
        std::vector<RepEntry> es;
        for (const auto &je : jf.at("entries")) {
            RepEntry e;
            e.dart.edge = je.at("edge").get<int>();
            if (e.dart.edge < 0 || e.dart.edge >= g.num_edges())
                throw Error("representation references unknown edge");
            const Edge &ge = g.edge(e.dart.edge);
            VertexId from = je.at("from").get<int>();
            if (ge.tail == ge.head) {
                if (!je.contains("end"))
                    throw Error("loop entry needs an \"end\" discriminator");
                e.dart.kind =
                    je.at("end").get<std::string>() == "tail" ? EndKind::Tail : EndKind::Head;
            } else if (from == ge.tail) {
                e.dart.kind = EndKind::Tail;
            } else if (from == ge.head) {
                e.dart.kind = EndKind::Head;
            } else {
                throw Error("entry \"from\" vertex is not an endpoint of its edge");
            }
            e.a = je.at("a").get<int>();
            e.s = je.at("s").get<int>();
            e.b = cover_from(je.at("b").get<std::string>());
            es.push_back(e);
        }
        parsed.push_back(std::move(es));
    }
    /* align parsed faces with the graph's traced faces */
    std::vector<Representation::FaceList> fl(g.faces().size());
    std::vector<char> used(g.faces().size(), 0);
    for (auto &es : parsed) {
        if (es.empty()) continue;
        FaceId f = g.face_of(es[0].dart);
        if (used[f]) throw Error("two representation faces map to one traced face");
        used[f] = 1;
        fl[f].entries = std::move(es);
        fl[f].outer = g.face(f).outer;
    }
    for (int f = 0; f < static_cast<int>(fl.size()); ++f)
        if (!used[f] && !g.face(f).boundary.empty())
            throw Error("representation misses face " + std::to_string(f));
    return Representation(g, std::move(fl));
}

Representation load_representation(const PlaneDigraph &g, const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return representation_from_json(g, ss.str());
}

void save_representation(const PlaneDigraph &g, const Representation &r,
                         const std::string &path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << representation_to_json(g, r) << "\n";
}

}  // namespace pcod
