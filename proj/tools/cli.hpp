#pragma once

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "normspec/family.hpp"
#include "normspec/io.hpp"

namespace normspec::cli {

struct Tolerances {
    double gap_ratio = 0.4;
    double c1_tol = 1e-6;
    double c2_tol = 1e-4;
    double slack = 1e-6;
    double proj_tol = 1e-10;
    double trans_tol = 1e-6;
    double cluster_tol = 1e-8;
    double prune_tol = 1e-12;

    /// Applies "name=value" overrides; throws InvalidArgument on unknown names.
    void apply(const std::vector<std::string>& overrides);
    Json to_json() const;
};

struct Settings {
    std::vector<double> interval;
    int grid = 0;
    std::string mode = "c0";
    bool loop = false;
    std::vector<double> line;
    std::vector<int> order;
    int trunc = 24;
    bool puiseux = false;
    int depth = 12;
    bool partial = false;
    int levels = 1;
    int refine = 10;
    std::vector<double> at;
    std::vector<double> center{0.0, 0.0};
    double radius = 1.0;
    int nodes = 64;
    std::vector<int> group;
    std::string a_file, b_file;
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double beta = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> tol;
    std::string out;
};

/// Result of one command: a report for stdout and files for --out.
struct Outcome {
    Json report = Json::object();
    bool pass = true;
    Json tolerances = Json::object();
    std::vector<std::pair<std::string, std::string>> texts;
    std::vector<std::pair<std::string, Json>> jsons;
};

Outcome cmd_track(const MatrixFamily& F, const Settings& s, const Tolerances& tol);
Outcome cmd_project(const MatrixFamily& F, const Settings& s, const Tolerances& tol);
Outcome cmd_transport(const MatrixFamily& F, const Settings& s, const Tolerances& tol);
Outcome cmd_expand(const MatrixFamily& F, const Settings& s, const Tolerances& tol);
Outcome cmd_resolve(const MatrixFamily& F, const Settings& s, const Tolerances& tol);
Outcome cmd_lipschitz(const MatrixFamily& F, const Settings& s, const Tolerances& tol);
Outcome cmd_continuity(const std::vector<MatrixFamily>& loops, const Settings& s);
Outcome cmd_pair(const std::string& which, const Settings& s);

/// Runs `cmd` ("track", "expand", "resolve", "certify", "check") on a corpus
/// entry, filling corpus defaults for unset settings.
Outcome cmd_corpus(const std::string& entry, const std::string& cmd, const std::string& kind, Settings s);
/// Self-check of every entry, run concurrently.
Outcome cmd_corpus_all(const Settings& s);

/// Writes artifacts, report and manifest to s.out (if set), prints the report
/// and returns the exit code.
int finish(const std::string& command, const Outcome& o, const Settings& s);

}  // namespace normspec::cli
