#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "normspec/errors.hpp"
#include "normspec/family.hpp"
#include "normspec/poly2.hpp"

namespace normspec {

/// Blow-up chart substitution: 1 is (x,y) -> (x, xy), 2 is (x,y) -> (xy, y).
Poly2 blowup_substitute(const Poly2& p, int chart);

struct NormalCrossings {
    Exponent alpha{0, 0};
    Poly2 unit;
    /// The cofactor does not vanish at the origin.
    bool nc = false;
};

/// Largest monomial factor x^a y^b of p and its cofactor.
NormalCrossings normal_crossings_form(const Poly2& p);

/// Componentwise minimum of the exponents, which must itself be a member.
/// Throws NotTotallyOrdered naming a non-comparable pair.
Exponent monomial_min(const std::vector<Exponent>& exps);

struct ChartNode {
    enum class Kind { Blowup, Split, Extract, Leaf };
    enum class Status { Resolved, Split, Pending, DepthExceeded };
    enum class Leaf { None, Scalar, Distinct, Constant };

    Kind kind = Kind::Leaf;
    Status status = Status::Pending;
    Leaf leaf = Leaf::None;
    /// Chart substitutions from the root.
    std::vector<int> path;
    /// Current matrix in chart coordinates, row-major.
    int n = 0;
    std::vector<Poly2> entries;
    /// Trace term removed and monomial divided out at an Extract node;
    /// eigenvalues are shift + x^alpha * (eigenvalues of the child).
    Poly2 shift;
    Exponent alpha{0, 0};
    /// Sum of the extracted exponents on the way here, in current chart coordinates.
    Exponent extracted{0, 0};
    /// Product of factorials of the eigenvalue multiplicities at the chart origin.
    std::size_t isotropy = 1;
    /// Entries carry a block reduction truncated at total degree `truncation`.
    bool approximate = false;
    int truncation = 0;
    int parent = -1;
    std::vector<int> children;
};

struct ChartTree {
    MatrixFamily family;
    std::vector<ChartNode> nodes;
    int max_depth = 12;

    const ChartNode& root() const { return nodes.front(); }
    std::vector<int> leaves() const;
    int depth() const;
};

struct ResolveOptions {
    int max_depth = 12;
    /// Relative tolerance for eigenvalue clusters at a chart origin.
    double cluster_tol = 1e-8;
    /// Coefficients below this (relative to the entry scale) are dropped.
    double prune_tol = 1e-12;
    /// Total degree kept in the series reduction of a coupled block.
    int block_degree = 16;
    /// Return the tree with DepthExceeded leaves instead of throwing.
    bool allow_partial = false;
};

/// Origin-centred resolution loop for a normal two-parameter polynomial family.
ChartTree resolve_family(const MatrixFamily& F, const ResolveOptions& opt = {});

/// Eigenvalues at a parameter point, evaluated through the leaf charts.
std::vector<Complex> chart_sample(const ChartTree& T, double x, double y);

/// Space-separated chart path, e.g. "s1 s2".
std::string path_string(const std::vector<int>& path);

}  // namespace normspec
