#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "normspec/family.hpp"

namespace normspec {

/// A worked example together with the outcomes it is expected to produce.
struct CorpusEntry {
    std::string name;
    std::string summary;
    MatrixFamily family;
    /// Named constants the family was built with.
    std::map<std::string, double> parameters;
    /// Closed forms of the eigenvalue branches as expressions in the family's parameters.
    std::vector<std::string> branches;
    /// Domain on which the closed forms hold.
    std::vector<std::pair<double, double>> branch_domain;
    std::optional<int> gamma;
    std::optional<int> chart_depth;
    /// Loop holonomy, as returned by holonomy().
    std::vector<int> holonomy;
    /// Certificate name -> expected PASS.
    std::map<std::string, bool> certificates;
};

inline constexpr double kDefaultAlpha = 1.5;
inline constexpr double kDefaultBeta = 2.6;
/// ex4 parameters with alpha + beta < 4.
inline constexpr double kBlowupAlpha = 1.2;
inline constexpr double kBlowupBeta = 2.5;

std::vector<std::string> corpus_names();

/// Throws InvalidArgument for an unknown name. alpha/beta apply to ex4 only.
CorpusEntry corpus_entry(const std::string& name, double alpha = kDefaultAlpha, double beta = kDefaultBeta);

MatrixFamily ex1_family();
/// [[0, x], [|x|, 0]] on the circle x = r e^{it}, t in [0, 2π].
MatrixFamily excont_loop(double r);
MatrixFamily ex3_family();
/// [[|x|^a, |x|^a − |x|^b (2 + sin(1/|x|))], [−|x|^a, −|x|^a]] with A(0) = 0.
MatrixFamily ex4_family(double alpha, double beta);

/// Shortest decimal form that reads back to the same double.
std::string format_real(double v);

}  // namespace normspec
