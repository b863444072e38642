#include <cmath>
#include <future>

#include "cli.hpp"
#include "normspec/blowup.hpp"
#include "normspec/corpus.hpp"
#include "normspec/errors.hpp"
#include "normspec/expr.hpp"
#include "normspec/formal.hpp"
#include "normspec/refine.hpp"
#include "normspec/tracking.hpp"

namespace normspec::cli {

namespace {

constexpr double kExcontRadii[] = {1.0, 1e-1, 1e-2, 1e-3};
constexpr double kEx4SmoothHalfWidth = 0.1;
constexpr double kEx4BlowupHalfWidth = 2e-6;

bool is_ex4_blowup(double alpha, double beta) { return alpha + beta < 4.0; }

void default_interval(Settings& s, double a, double b) {
    if (s.interval.empty()) s.interval = {a, b};
}

void default_line(Settings& s) {
    if (s.line.empty()) s.line = {0.0, 0.0, 1.0, 0.0};
}

// Corpus defaults for the settings the user left unset.
void apply_defaults(const CorpusEntry& e, const std::string& cmd, const std::string& kind, Settings& s,
                    Tolerances& tol) {
    if (e.name == "ex1") {
        if (cmd != "resolve") default_line(s);
        if (cmd == "transport") {
            default_interval(s, 0.2, 1.0);
            if (s.group.empty()) s.group = {1};
        }
        if (cmd == "project" && s.at.empty()) s.at = {0.3, 0.4};
        if (cmd == "project" && s.center == std::vector<double>{0.0, 0.0}) {
            s.center = {0.5, 0.0};
            s.radius = 0.5;
        }
    } else if (e.name == "excont") {
        if (s.grid == 0) s.grid = 64;
        if (cmd == "transport") {
            default_interval(s, 0.0, M_PI);
            if (s.group.empty()) s.group = {1};
        }
    } else if (e.name == "ex3") {
        if (cmd == "expand") s.puiseux = true;
    } else if (e.name == "ex4") {
        tol.c1_tol = 1e-3;
        const bool blowup = is_ex4_blowup(e.parameters.at("alpha"), e.parameters.at("beta"));
        if (cmd == "certify" && kind == "lipschitz" && blowup) {
            default_interval(s, -kEx4BlowupHalfWidth, kEx4BlowupHalfWidth);
            if (s.grid == 0) s.grid = 1000;
            if (s.levels == 1) s.levels = 4;
        } else {
            default_interval(s, -kEx4SmoothHalfWidth, kEx4SmoothHalfWidth);
            if (s.grid == 0) s.grid = 2000;
        }
    }
}

std::string default_kind(const std::string& entry) {
    if (entry == "excont") return "continuity";
    if (entry == "ex1" || entry == "ex4") return "lipschitz";
    throw InvalidArgument("corpus entry '" + entry + "' has no certificate");
}

std::vector<MatrixFamily> excont_loops() {
    std::vector<MatrixFamily> loops;
    for (double r : kExcontRadii) {
        MatrixFamily F = excont_loop(r);
        F.set_name("excont r=" + format_real(r));
        loops.push_back(std::move(F));
    }
    return loops;
}

struct Checks {
    Json list = Json::array();
    bool pass = true;

    void add(const std::string& what, const Json& expected, const Json& observed, bool ok) {
        list.push_back(Json{{"check", what}, {"expected", expected}, {"observed", observed}, {"pass", ok}});
        pass = pass && ok;
    }
    // Runs f; an exception counts as a failed check carrying the error code.
    template <class F>
    void guard(const std::string& what, F&& f) {
        try {
            f();
        } catch (const Error& e) {
            add(what, "completes", e.code() + ": " + e.what(), false);
        }
    }
};

double multiset_gap(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return INFINITY;
    double worst = 0.0;
    for (Complex v : a) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < b.size(); ++j)
            if (std::abs(b[j] - v) < std::abs(b[best] - v)) best = j;
        worst = std::max(worst, std::abs(b[best] - v));
        b.erase(b.begin() + static_cast<long>(best));
    }
    return worst;
}

std::vector<Complex> closed_forms(const CorpusEntry& e, double x, double y) {
    std::vector<Complex> v;
    for (const auto& s : e.branches) v.push_back(parse_expr(s).eval({x, x, y}));
    return v;
}

Checks check_ex1(const CorpusEntry& e, const Settings& base) {
    Checks c;
    Tolerances tol;
    c.guard("resolve", [&] {
        const ChartTree T = resolve_family(e.family);
        c.add("chart depth", *e.chart_depth, T.depth(), T.depth() == *e.chart_depth);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double x = std::cos(0.7 * k + 0.1) * (0.2 + 0.04 * k), y = std::sin(1.3 * k + 0.4) * 0.9;
            worst = std::max(worst, multiset_gap(chart_sample(T, x, y), closed_forms(e, x, y)));
        }
        c.add("chart samples match closed forms", "<= 1e-8", worst, worst <= 1e-8);
    });
    c.guard("lipschitz", [&] {
        Settings s = base;
        apply_defaults(e, "certify", "lipschitz", s, tol);
        const Outcome o = cmd_lipschitz(e.family, s, tol);
        c.add("lipschitz on y=0", e.certificates.at("lipschitz") ? "PASS" : "FAIL", o.report["status"],
              o.pass == e.certificates.at("lipschitz"));
    });
    c.guard("transport", [&] {
        Settings s = base;
        apply_defaults(e, "transport", "", s, tol);
        const Outcome o = cmd_transport(e.family, s, tol);
        const double r = o.report["intertwining_residual"].get<double>();
        c.add("transport intertwining residual", "<= 1e-6", r, r <= 1e-6);
    });
    return c;
}

Checks check_excont(const CorpusEntry& e, const Settings& base) {
    Checks c;
    Tolerances tol;
    c.guard("track", [&] {
        Settings s = base;
        s.loop = true;
        apply_defaults(e, "track", "", s, tol);
        const Outcome o = cmd_track(e.family, s, tol);
        c.add("loop holonomy", e.holonomy, o.report["holonomy"], o.report["holonomy"] == Json(e.holonomy));
    });
    c.guard("continuity", [&] {
        Settings s = base;
        apply_defaults(e, "certify", "continuity", s, tol);
        const Outcome o = cmd_continuity(excont_loops(), s);
        c.add("continuous selection near 0", e.certificates.at("continuity") ? "PASS" : "FAIL", o.report["status"],
              o.pass == e.certificates.at("continuity"));
    });
    c.guard("project", [&] {
        Settings s = base;
        s.at = {0.0};
        s.center = {1.0, 0.0};
        s.radius = 0.5;
        const Outcome o = cmd_project(e.family, s, tol);
        c.add("projection rank at t=0", 1, o.report["rank"], o.report["rank"] == 1);
    });
    return c;
}

Checks check_ex3(const CorpusEntry& e, const Settings& base) {
    Checks c;
    Tolerances tol;
    c.guard("expand", [&] {
        Settings s = base;
        apply_defaults(e, "expand", "", s, tol);
        int dmax = 0;
        for (const auto& q : e.family.poly_entries()) dmax = std::max(dmax, q.total_degree());
        ExpandOptions eo;
        eo.truncation = static_cast<std::size_t>(s.trunc);
        const Expansion x = puiseux_expand(char_poly_series(e.family, std::size_t(e.family.n()) * dmax + 2), eo);
        c.add("ramification index", *e.gamma, x.gamma, x.gamma == *e.gamma);
        double worst = 0.0;
        for (double t : {0.04, 0.25, 0.81}) worst = std::max(worst, multiset_gap(evaluate_branches(x, t), closed_forms(e, t, 0)));
        c.add("branches match closed forms", "<= 1e-12", worst, worst <= 1e-12);
    });
    return c;
}

Checks check_ex4(const CorpusEntry& e, const Settings& base) {
    Checks c;
    Tolerances tol;
    if (e.certificates.count("c1")) {
        c.guard("c1", [&] {
            Settings s = base;
            apply_defaults(e, "track", "", s, tol);
            s.mode = "c1";
            const auto [a, b] = std::pair{s.interval[0], s.interval[1]};
            const Curve cv = make_curve(e.family, b - a);
            RefineOptions ro;
            ro.c1_tol = tol.c1_tol;
            const BranchSet B = c1_refine(track_curve(cv, a, b, s.grid), cv, ro);
            c.add("c1 refinement", "succeeds", "succeeds", true);
            int k0 = -1;
            for (int k = 0; k < B.nodes(); ++k)
                if (B.grid[k] == 0.0) k0 = k;
            double jump = 0.0, size = 0.0;
            if (k0 >= 0)
                for (int j = 0; j < B.n(); ++j) {
                    jump = std::max(jump, std::abs(B.left_d[k0][j] - B.right_d[k0][j]));
                    size = std::max({size, std::abs(B.left_d[k0][j]), std::abs(B.right_d[k0][j])});
                }
            const bool ok = k0 >= 0 && jump <= 1e-3 && size <= 1e-3;
            c.add("derivatives at 0 (jump, size)", "<= 1e-3", Json::array({jump, size}), ok);
        });
    }
    if (e.certificates.count("lipschitz")) {
        c.guard("lipschitz", [&] {
            Settings s = base;
            apply_defaults(e, "certify", "lipschitz", s, tol);
            const Outcome o = cmd_lipschitz(e.family, s, tol);
            c.add("lipschitz near 0", e.certificates.at("lipschitz") ? "PASS" : "FAIL", o.report["status"],
                  o.pass == e.certificates.at("lipschitz"));
            const double ratio = o.report["levels"].back()["ratio"].get<double>();
            c.add("finest quotient / sup|A'|", "> 10", ratio, ratio > 10.0);
        });
    }
    return c;
}

Checks run_checks(const CorpusEntry& e, const Settings& s) {
    if (e.name == "ex1") return check_ex1(e, s);
    if (e.name == "excont") return check_excont(e, s);
    if (e.name == "ex3") return check_ex3(e, s);
    return check_ex4(e, s);
}

CorpusEntry entry_for(const std::string& name, const Settings& s) {
    const bool given = !std::isnan(s.alpha) || !std::isnan(s.beta);
    if (given && name != "ex4") throw InvalidArgument("--alpha/--beta apply to ex4 only");
    return corpus_entry(name, std::isnan(s.alpha) ? kDefaultAlpha : s.alpha, std::isnan(s.beta) ? kDefaultBeta : s.beta);
}

Json entry_header(const CorpusEntry& e) {
    Json h{{"entry", e.name}, {"summary", e.summary}, {"branches", e.branches}};
    if (!e.parameters.empty()) h["parameters"] = e.parameters;
    return h;
}

}  // namespace

Outcome cmd_corpus(const std::string& entry, const std::string& cmd, const std::string& kind_in, Settings s) {
    const CorpusEntry e = entry_for(entry, s);
    const std::string kind = cmd == "certify" && kind_in.empty() ? default_kind(entry) : kind_in;
    Tolerances tol;
    apply_defaults(e, cmd, kind, s, tol);
    tol.apply(s.tol);

    Outcome o;
    if (cmd == "check") {
        const Checks c = run_checks(e, s);
        o.report = entry_header(e);
        o.report["checks"] = c.list;
        o.pass = c.pass;
        o.report["status"] = c.pass ? "PASS" : "FAIL";
    } else if (cmd == "family") {
        o.report = entry_header(e);
        o.jsons.emplace_back("family.json", family_to_json(e.family));
        o.report["family"] = family_to_json(e.family);
    } else if (cmd == "track") {
        o = cmd_track(e.family, s, tol);
    } else if (cmd == "project") {
        o = cmd_project(e.family, s, tol);
    } else if (cmd == "transport") {
        o = cmd_transport(e.family, s, tol);
    } else if (cmd == "expand") {
        o = cmd_expand(e.family, s, tol);
    } else if (cmd == "resolve") {
        o = cmd_resolve(e.family, s, tol);
    } else if (cmd == "certify") {
        if (kind == "lipschitz")
            o = cmd_lipschitz(e.family, s, tol);
        else if (kind == "continuity" && entry == "excont")
            o = cmd_continuity(excont_loops(), s);
        else
            throw InvalidArgument("corpus entry '" + entry + "' has no '" + kind + "' certificate");
    } else {
        throw InvalidArgument("unknown corpus command '" + cmd + "'");
    }
    if (o.tolerances.empty()) o.tolerances = tol.to_json();
    o.report["entry"] = entry;
    if (!e.parameters.empty()) o.report["parameters"] = e.parameters;
    return o;
}

Outcome cmd_corpus_all(const Settings& s) {
    std::vector<CorpusEntry> entries;
    for (const auto& name : corpus_names()) entries.push_back(corpus_entry(name));
    entries.push_back(corpus_entry("ex4", kBlowupAlpha, kBlowupBeta));

    std::vector<std::future<Checks>> jobs;
    for (const auto& e : entries) jobs.push_back(std::async(std::launch::async, [&e, &s] { return run_checks(e, s); }));

    Outcome o;
    Json list = Json::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Checks c = jobs[i].get();
        Json r = entry_header(entries[i]);
        r["checks"] = c.list;
        r["status"] = c.pass ? "PASS" : "FAIL";
        list.push_back(std::move(r));
        o.pass = o.pass && c.pass;
    }
    o.report["entries"] = list;
    o.report["status"] = o.pass ? "PASS" : "FAIL";
    o.tolerances = Tolerances{}.to_json();
    return o;
}

}  // namespace normspec::cli
