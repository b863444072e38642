#include <algorithm>
#include <filesystem>
#include <iostream>

#include "cli.hpp"
#include "normspec/blowup.hpp"
#include "normspec/certify.hpp"
#include "normspec/errors.hpp"
#include "normspec/formal.hpp"
#include "normspec/refine.hpp"
#include "normspec/spectral.hpp"
#include "normspec/tracking.hpp"

namespace normspec::cli {

void Tolerances::apply(const std::vector<std::string>& overrides) {
    const std::map<std::string, double*> slots{
        {"gap_ratio", &gap_ratio}, {"c1_tol", &c1_tol},           {"c2_tol", &c2_tol},
        {"slack", &slack},         {"proj_tol", &proj_tol},       {"trans_tol", &trans_tol},
        {"cluster_tol", &cluster_tol}, {"prune_tol", &prune_tol},
    };
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw InvalidArgument("--tol expects name=value, got '" + o + "'");
        const auto it = slots.find(o.substr(0, eq));
        if (it == slots.end()) throw InvalidArgument("unknown tolerance '" + o.substr(0, eq) + "'");
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(o.substr(eq + 1), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != o.size() - eq - 1 || !(v > 0.0))
            throw InvalidArgument("tolerance '" + it->first + "' needs a positive number");
        *it->second = v;
    }
}

Json Tolerances::to_json() const {
    return Json{{"gap_ratio", gap_ratio}, {"c1_tol", c1_tol},           {"c2_tol", c2_tol},
                {"slack", slack},         {"proj_tol", proj_tol},       {"trans_tol", trans_tol},
                {"cluster_tol", cluster_tol}, {"prune_tol", prune_tol}};
}

namespace {

struct Path {
    Curve curve;
    double a = -1.0, b = 1.0;
};

Path path_of(const MatrixFamily& F, const Settings& s) {
    Path p;
    if (F.params() == 2) {
        if (s.line.size() != 4) throw InvalidArgument("a two-parameter family needs --line X0 Y0 DX DY");
        p.curve = make_line_curve(F, s.line[0], s.line[1], s.line[2], s.line[3]);
    } else {
        if (!s.line.empty()) throw InvalidArgument("--line applies to two-parameter families only");
        std::tie(p.a, p.b) = F.domain().front();
    }
    if (s.interval.size() == 2) {
        p.a = s.interval[0];
        p.b = s.interval[1];
    }
    if (!(p.a < p.b)) throw InvalidArgument("--interval needs A < B");
    if (F.params() == 1) p.curve = make_curve(F, p.b - p.a);
    return p;
}

int grid_or(const Settings& s, int fallback) {
    const int m = s.grid > 0 ? s.grid : fallback;
    if (m < 1) throw InvalidArgument("--grid must be positive");
    return m;
}

Json interval_json(const Path& p) { return Json::array({p.a, p.b}); }

Json perm_json(const std::vector<int>& p) { return Json(p); }

// 1-based cycle notation without fixed points, e.g. "(1 2)"; "()" for the identity.
std::string cycles(const std::vector<int>& p) {
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i)) continue;
        out += "(";
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = true;
            out += (j == i ? "" : " ") + std::to_string(j + 1);
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

const char* status(bool pass) { return pass ? "PASS" : "FAIL"; }

}  // namespace

Outcome cmd_track(const MatrixFamily& F, const Settings& s, const Tolerances& tol) {
    const Path p = path_of(F, s);
    TrackOptions to;
    to.gap_ratio = tol.gap_ratio;
    to.initial_order = s.order;
    BranchSet B = track_curve(p.curve, p.a, p.b, grid_or(s, 200), to);
    RefineOptions ro;
    ro.c1_tol = tol.c1_tol;
    ro.c2_tol = tol.c2_tol;
    if (s.mode == "c1")
        B = c1_refine(B, p.curve, ro);
    else if (s.mode == "c2")
        B = c2_refine(B, p.curve, ro);
    else if (s.mode != "c0")
        throw InvalidArgument("--mode must be c0, c1 or c2");

    Outcome o;
    o.tolerances = tol.to_json();
    o.report["family"] = F.name();
    o.report["n"] = F.n();
    o.report["interval"] = interval_json(p);
    o.report["nodes"] = B.nodes();
    o.report["mode"] = s.mode;
    if (s.loop) {
        const auto h = holonomy(B, p.curve);
        o.report["holonomy"] = perm_json(h);
        o.report["holonomy_cycles"] = cycles(h);
        bool id = true;
        for (std::size_t j = 0; j < h.size(); ++j) id = id && h[j] == static_cast<int>(j);
        o.report["holonomy_identity"] = id;
    }
    o.texts.emplace_back("branches.csv", branchset_csv(B));
    o.jsons.emplace_back("branches.json", branchset_json(B));
    return o;
}

Outcome cmd_project(const MatrixFamily& F, const Settings& s, const Tolerances& tol) {
    if (static_cast<int>(s.at.size()) != F.params())
        throw InvalidArgument("--at needs " + std::to_string(F.params()) + " coordinate(s)");
    if (s.center.size() != 2 || !(s.radius > 0.0) || s.nodes < 4)
        throw InvalidArgument("contour needs --center RE IM, --radius > 0 and --nodes >= 4");
    const Mat A = F.eval(s.at);
    const Contour g{Complex(s.center[0], s.center[1]), s.radius, s.nodes};
    ProjectionOptions po;
    po.proj_tol = tol.proj_tol;
    const SpectralProjection sp = contour_projection(A, g, po);

    Outcome o;
    o.tolerances = tol.to_json();
    o.report["family"] = F.name();
    o.report["point"] = s.at;
    o.report["rank"] = sp.rank;
    o.report["nodes_used"] = sp.nodes_used;
    Json art;
    art["projection"] = matrix_to_json(sp.P);
    if (sp.rank > 0) art["frame"] = matrix_to_json(frame_of(sp.P, sp.rank));
    o.jsons.emplace_back("projection.json", art);
    o.report["projection"] = art["projection"];
    return o;
}

Outcome cmd_transport(const MatrixFamily& F, const Settings& s, const Tolerances& tol) {
    if (s.group.empty()) throw InvalidArgument("transport needs --group I[,J...]");
    const Path p = path_of(F, s);
    TransportOptions to;
    to.trans_tol = tol.trans_tol;
    to.projection.proj_tol = tol.proj_tol;
    const int m = grid_or(s, 200);
    const TransportResult r = transport(p.curve, p.a, p.b, m, s.group, to);

    Outcome o;
    o.tolerances = tol.to_json();
    o.report["family"] = F.name();
    o.report["interval"] = interval_json(p);
    o.report["steps"] = m;
    o.report["group"] = s.group;
    o.report["unitarity_residual"] = r.unitarity_residual;
    o.report["intertwining_residual"] = r.intertwining_residual;
    if (s.group.size() == 1) o.report["eigen_residual"] = r.eigen_residual;
    Json art;
    art["grid"] = r.grid;
    Json U = Json::array();
    for (const auto& u : r.U) U.push_back(matrix_to_json(u));
    art["U"] = U;
    Json fr = Json::array();
    for (const auto& f : r.frames) fr.push_back(matrix_to_json(f));
    art["frames"] = fr;
    o.jsons.emplace_back("transport.json", art);
    return o;
}

Outcome cmd_expand(const MatrixFamily& F0, const Settings& s, const Tolerances& tol) {
    MatrixFamily F = F0;
    if (F.params() == 2) {
        if (s.line.size() != 4) throw InvalidArgument("a two-parameter family needs --line X0 Y0 DX DY");
        F = F.restrict_to_line(s.line[0], s.line[1], s.line[2], s.line[3]);
    }
    if (!F.is_polynomial()) throw InvalidArgument("expand requires a polynomial family");
    if (s.trunc < 1) throw InvalidArgument("--trunc must be positive");
    ExpandOptions eo;
    eo.truncation = static_cast<std::size_t>(s.trunc);
    Expansion e;
    if (s.puiseux) {
        int dmax = 0;
        for (const auto& q : F.poly_entries()) dmax = std::max(dmax, q.total_degree());
        e = puiseux_expand(char_poly_series(F, std::size_t(F.n()) * std::size_t(dmax) + 2), eo);
    } else {
        e = branch_expand(F, eo);
    }
    Outcome o;
    o.tolerances = tol.to_json();
    o.tolerances["truncation"] = s.trunc;
    o.report["family"] = F0.name();
    o.report["method"] = s.puiseux ? "puiseux" : "branch";
    o.report["gamma"] = e.gamma;
    o.report["branches"] = branch_count(e);
    o.report["residual"] = e.residual;
    o.jsons.emplace_back("expansion.json", expansion_to_json(e));
    return o;
}

Outcome cmd_resolve(const MatrixFamily& F, const Settings& s, const Tolerances& tol) {
    ResolveOptions ro;
    ro.max_depth = s.depth;
    ro.cluster_tol = tol.cluster_tol;
    ro.prune_tol = tol.prune_tol;
    ro.allow_partial = s.partial;
    const ChartTree T = resolve_family(F, ro);
    Outcome o;
    o.tolerances = tol.to_json();
    o.tolerances["max_depth"] = s.depth;
    o.report["family"] = F.name();
    o.report["depth"] = T.depth();
    o.report["nodes"] = T.nodes.size();
    Json leaves = Json::array();
    bool resolved = true;
    for (int id : T.leaves()) {
        const ChartNode& N = T.nodes[id];
        resolved = resolved && N.status == ChartNode::Status::Resolved;
        leaves.push_back(Json{{"path", path_string(N.path)},
                              {"status", N.status == ChartNode::Status::Resolved ? "resolved" : "depth_exceeded"},
                              {"approximate", N.approximate}});
    }
    o.report["leaves"] = leaves;
    o.pass = resolved;
    o.jsons.emplace_back("chart_tree.json", chart_tree_to_json(T));
    o.texts.emplace_back("chart_summary.txt", chart_tree_summary(T));
    return o;
}

Outcome cmd_lipschitz(const MatrixFamily& F, const Settings& s, const Tolerances& tol) {
    const Path p = path_of(F, s);
    if (s.levels < 1 || s.refine < 2) throw InvalidArgument("--levels must be >= 1 and --refine >= 2");
    TrackOptions to;
    to.gap_ratio = tol.gap_ratio;
    Outcome o;
    o.tolerances = tol.to_json();
    o.report["certificate"] = "lipschitz";
    o.report["family"] = F.name();
    o.report["interval"] = interval_json(p);
    Json levels = Json::array();
    long m = grid_or(s, 200);
    double first = 0.0, last = 0.0;
    for (int l = 0; l < s.levels; ++l, m *= s.refine) {
        const BranchSet B = track_curve(p.curve, p.a, p.b, static_cast<int>(m), to);
        const LipschitzReport r = lipschitz_certificate(B, p.curve, tol.slack);
        if (l == 0) first = r.worst;
        last = r.worst;
        o.pass = o.pass && r.pass;
        levels.push_back(Json{{"grid", m},
                              {"nodes", B.nodes()},
                              {"worst", r.worst},
                              {"worst_branch", r.worst_branch},
                              {"worst_t", r.worst_t},
                              {"bound", r.bound},
                              {"ratio", r.bound > 0.0 ? r.worst / r.bound : 0.0},
                              {"margin", r.margin},
                              {"status", status(r.pass)}});
    }
    o.report["levels"] = levels;
    if (s.levels > 1 && first > 0.0) o.report["growth"] = last / first;
    o.report["status"] = status(o.pass);
    return o;
}

Outcome cmd_continuity(const std::vector<MatrixFamily>& loops, const Settings& s) {
    for (const auto& F : loops)
        if (F.params() != 1) throw InvalidArgument("continuity loops must be one-parameter families");
    const ContinuityReport r = continuity_certificate(loops, grid_or(s, 64));
    Outcome o;
    o.report["certificate"] = "continuity";
    Json L = Json::array();
    for (const auto& h : r.loops)
        L.push_back(Json{{"loop", h.label}, {"holonomy", h.perm}, {"cycles", cycles(h.perm)}, {"identity", h.identity}});
    o.report["loops"] = L;
    o.report["selection_possible"] = r.pass;
    o.pass = r.pass;
    o.report["status"] = status(r.pass);
    return o;
}

Outcome cmd_pair(const std::string& which, const Settings& s) {
    if (s.a_file.empty() || s.b_file.empty()) throw InvalidArgument(which + " needs --a FILE and --b FILE");
    const Mat A = matrix_from_json(read_json(s.a_file));
    const Mat B = matrix_from_json(read_json(s.b_file));
    if (A.rows() != B.rows()) throw InvalidArgument("matrices differ in size");
    const BoundCheck c = which == "weyl" ? weyl_check(A, B) : bhatia_check(A, B);
    Outcome o;
    o.report["certificate"] = which;
    o.report["lhs"] = c.lhs;
    o.report["rhs"] = c.rhs;
    o.report["ratio"] = c.ratio;
    o.pass = c.pass;
    o.report["status"] = status(c.pass);
    return o;
}

int finish(const std::string& command, const Outcome& o, const Settings& s) {
    Json report = Json{{"command", command}};
    for (const auto& [k, v] : o.report.items()) report[k] = v;
    if (!report.contains("status")) report["status"] = o.pass ? "ok" : "FAIL";
    if (!s.out.empty()) {
        std::filesystem::create_directories(s.out);
        const std::filesystem::path dir(s.out);
        for (const auto& [name, text] : o.texts) write_text((dir / name).string(), text);
        for (const auto& [name, j] : o.jsons) write_json((dir / name).string(), j);
        write_json((dir / "report.json").string(), report);
        write_json((dir / "manifest.json").string(), run_manifest(command, o.tolerances));
    }
    std::cout << report.dump(2) << '\n';
    return o.pass ? 0 : 2;
}

}  // namespace normspec::cli
