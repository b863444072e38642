#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "normspec/errors.hpp"

using namespace normspec;
using namespace normspec::cli;

namespace {

void diagnostic(const std::string& code, const std::string& message, const Json& extra = Json::object()) {
    Json j{{"error", code}, {"message", message}};
    for (const auto& [k, v] : extra.items()) j[k] = v;
    std::cerr << j.dump() << '\n';
}

bool is_input_error(const std::string& code) {
    return code == "FormatError" || code == "SyntaxError" || code == "InvalidArgument" || code == "EvalError" ||
           code == "NotALoop";
}

void add_path_flags(CLI::App* c, Settings& s) {
    c->add_option("--interval", s.interval, "Parameter interval A B")->expected(2);
    c->add_option("--grid", s.grid, "Number of uniform steps");
    c->add_option("--line", s.line, "Line X0 Y0 DX DY through a two-parameter family")->expected(4);
}

void add_common_flags(CLI::App* c, Settings& s) {
    c->add_option("--tol", s.tol, "Tolerance override name=value (repeatable)")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    c->add_option("--out", s.out, "Directory for artifacts and the run manifest");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenvalue branches of parameterized normal matrices"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    Settings s;
    std::string family_file;
    std::vector<std::string> loop_files;
    std::string entry, corpus_cmd = "check", corpus_kind;

    auto* track = app.add_subcommand("track", "Continuous eigenvalue branches along a curve");
    track->add_option("family", family_file, "Family JSON")->required();
    add_path_flags(track, s);
    track->add_option("--mode", s.mode, "Smoothness: c0, c1 or c2");
    track->add_flag("--loop", s.loop, "Report the holonomy of a closed curve");
    track->add_option("--order", s.order, "Initial column order (permutation of sorted eigenvalues)")->delimiter(',');
    add_common_flags(track, s);

    auto* project = app.add_subcommand("project", "Spectral projection by contour quadrature");
    project->add_option("family", family_file, "Family JSON")->required();
    project->add_option("--at", s.at, "Parameter point")->expected(1, 2)->required();
    project->add_option("--center", s.center, "Contour centre RE IM")->expected(2);
    project->add_option("--radius", s.radius, "Contour radius");
    project->add_option("--nodes", s.nodes, "Initial quadrature nodes");
    add_common_flags(project, s);

    auto* transport = app.add_subcommand("transport", "Unitary transport of a spectral projection");
    transport->add_option("family", family_file, "Family JSON")->required();
    add_path_flags(transport, s);
    transport->add_option("--group", s.group, "Eigenvalue indices at the start, sorted by (re, im)")->delimiter(',');
    add_common_flags(transport, s);

    auto* expand = app.add_subcommand("expand", "Power-series eigenvalue branches at 0");
    expand->add_option("family", family_file, "Family JSON")->required();
    expand->add_option("--trunc", s.trunc, "Truncation order");
    expand->add_flag("--puiseux", s.puiseux, "Expand the characteristic polynomial with fractional exponents");
    expand->add_option("--line", s.line, "Line X0 Y0 DX DY through a two-parameter family")->expected(4);
    add_common_flags(expand, s);

    auto* resolve = app.add_subcommand("resolve", "Blow-up resolution of a two-parameter family");
    resolve->add_option("family", family_file, "Family JSON")->required();
    resolve->add_option("--depth", s.depth, "Maximum chart depth");
    resolve->add_flag("--partial", s.partial, "Report unresolved charts instead of failing");
    add_common_flags(resolve, s);

    auto* certify = app.add_subcommand("certify", "Perturbation and regularity certificates");
    certify->require_subcommand(1);
    CLI::App* pair_cmds[2];
    int i = 0;
    for (const char* name : {"weyl", "bhatia"}) {
        auto* c = certify->add_subcommand(name, std::string(name) + " bound for a matrix pair");
        c->add_option("--a", s.a_file, "Matrix JSON")->required();
        c->add_option("--b", s.b_file, "Matrix JSON")->required();
        add_common_flags(c, s);
        pair_cmds[i++] = c;
    }
    auto* lip = certify->add_subcommand("lipschitz", "Difference quotients against sup |A'|");
    lip->add_option("family", family_file, "Family JSON")->required();
    add_path_flags(lip, s);
    lip->add_option("--levels", s.levels, "Number of grid refinements");
    lip->add_option("--refine", s.refine, "Grid factor between levels");
    add_common_flags(lip, s);
    auto* cont = certify->add_subcommand("continuity", "Loop holonomy obstruction to a continuous selection");
    cont->add_option("loops", loop_files, "Closed one-parameter family JSON files")->required();
    cont->add_option("--grid", s.grid, "Steps per loop");
    add_common_flags(cont, s);

    auto* corpus = app.add_subcommand("corpus", "Worked examples: ex1, excont, ex3, ex4 or all");
    corpus->add_option("entry", entry, "Entry name or 'all'")->required();
    corpus->add_option("command", corpus_cmd, "check, family, track, project, transport, expand, resolve, certify");
    corpus->add_option("kind", corpus_kind, "Certificate for 'certify'");
    add_path_flags(corpus, s);
    corpus->add_option("--mode", s.mode, "Smoothness: c0, c1 or c2");
    corpus->add_flag("--loop", s.loop, "Report the holonomy of a closed curve");
    corpus->add_option("--trunc", s.trunc, "Truncation order");
    corpus->add_option("--depth", s.depth, "Maximum chart depth");
    corpus->add_option("--levels", s.levels, "Number of grid refinements");
    corpus->add_option("--alpha", s.alpha, "ex4 exponent alpha (> 1)");
    corpus->add_option("--beta", s.beta, "ex4 exponent beta (> 2)");
    add_common_flags(corpus, s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        diagnostic("UsageError", e.what());
        return 1;
    }

    std::string command;
    try {
        Outcome o;
        Tolerances tol;
        if (!corpus->parsed()) tol.apply(s.tol);
        if (track->parsed()) {
            command = "track";
            o = cmd_track(read_family(family_file), s, tol);
        } else if (project->parsed()) {
            command = "project";
            o = cmd_project(read_family(family_file), s, tol);
        } else if (transport->parsed()) {
            command = "transport";
            o = cmd_transport(read_family(family_file), s, tol);
        } else if (expand->parsed()) {
            command = "expand";
            o = cmd_expand(read_family(family_file), s, tol);
        } else if (resolve->parsed()) {
            command = "resolve";
            o = cmd_resolve(read_family(family_file), s, tol);
        } else if (certify->parsed()) {
            if (lip->parsed()) {
                command = "certify lipschitz";
                o = cmd_lipschitz(read_family(family_file), s, tol);
            } else if (cont->parsed()) {
                command = "certify continuity";
                std::vector<MatrixFamily> loops;
                for (const auto& f : loop_files) loops.push_back(read_family(f));
                o = cmd_continuity(loops, s);
            } else {
                const std::string which = pair_cmds[0]->parsed() ? "weyl" : "bhatia";
                command = "certify " + which;
                o = cmd_pair(which, s);
            }
        } else {
            command = "corpus " + entry + (entry == "all" ? "" : " " + corpus_cmd);
            if (entry == "all") {
                if (corpus_cmd != "check") throw InvalidArgument("'corpus all' only runs the self-check");
                o = cmd_corpus_all(s);
            } else {
                o = cmd_corpus(entry, corpus_cmd, corpus_kind, s);
            }
        }
        return finish(command, o, s);
    } catch (const SyntaxError& e) {
        diagnostic(e.code(), e.what(), Json{{"command", command}, {"offset", e.offset()}, {"expected", e.expected()}});
        return 1;
    } catch (const Error& e) {
        diagnostic(e.code(), e.what(), Json{{"command", command}});
        return is_input_error(e.code()) ? 1 : 2;
    } catch (const std::exception& e) {
        diagnostic("InternalError", e.what(), Json{{"command", command}});
        return 1;
    }
}
