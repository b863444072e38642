#pragma once

#include <string>

#include <json.hpp>

#include "normspec/blowup.hpp"
#include "normspec/family.hpp"
#include "normspec/formal.hpp"
#include "normspec/tracking.hpp"

namespace normspec {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kFamilyFormat = "normspec-family/1";
inline constexpr const char* kBranchCsvFormat = "normspec-branches-csv/1";

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
/// Rows of [re, im] pairs. Plain numbers are accepted as real entries on input.
Json matrix_to_json(const Mat& M);
Mat matrix_from_json(const Json& j);
/// Object keyed by "a" (one parameter) or "a,b" (two parameters).
Json poly_to_json(const Poly2& p, int params);
Poly2 poly_from_json(const Json& j, int params);

/// Throws FormatError on malformed input.
Json family_to_json(const MatrixFamily& F);
MatrixFamily family_from_json(const Json& j);
MatrixFamily read_family(const std::string& path);

/// Columns t, re_1, im_1, ..., re_n, im_n.
std::string branchset_csv(const BranchSet& B);
/// Permutation provenance, smoothness tags, marked nodes and derivative rows.
Json branchset_json(const BranchSet& B);

Json expansion_to_json(const Expansion& e);
Json chart_tree_to_json(const ChartTree& T);
std::string chart_tree_summary(const ChartTree& T);

/// Run metadata written next to every artifact set.
Json run_manifest(const std::string& command, const Json& tolerances, const Json& seeds = Json::object());

Json read_json(const std::string& path);
/// Writes dump(2) followed by a newline.
void write_json(const std::string& path, const Json& j);
void write_text(const std::string& path, const std::string& s);

}  // namespace normspec
