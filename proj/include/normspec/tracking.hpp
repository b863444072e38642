#pragma once

#include <vector>

#include "normspec/family.hpp"
#include "normspec/matching.hpp"

namespace normspec {

enum class Smoothness { C0, C1, C2 };

/// Eigenvalue branches sampled on a grid; column j of `values` is branch j.
struct BranchSet {
    std::vector<double> grid;
    std::vector<std::vector<Complex>> values;
    /// perms[k][j]: index, among the eigenvalues at node k sorted by (re, im),
    /// of the value placed in column j.
    std::vector<std::vector<int>> perms;
    /// One-sided derivative rows (empty unless computed by a refinement).
    std::vector<std::vector<Complex>> left_d, right_d;
    std::vector<Smoothness> tags;
    /// Grid indices at which second-order smoothness was enforced.
    std::vector<int> marked;

    int n() const noexcept { return values.empty() ? 0 : static_cast<int>(values.front().size()); }
    int nodes() const noexcept { return static_cast<int>(grid.size()); }
    std::vector<Complex> column(int j) const;
    /// Reorders every row by the same column permutation (new column j = old cols[j]).
    void permute_columns(const std::vector<int>& cols, int from_node = 0);
};

struct TrackOptions {
    double gap_ratio = 0.4;
    int max_depth = 40;
    /// Column order at the first node, as a permutation of the values sorted
    /// by (re, im). Empty means sorted order.
    std::vector<int> initial_order;
};

/// Sorted-by-(re,im) eigenvalues of A.
std::vector<Complex> sorted_eigenvalues(const Mat& A);

/// Continuous eigenvalue branches on [a, b] sampled at m+1 uniform nodes plus
/// any bisection nodes. Throws RefinementExhausted when a step stays ambiguous.
BranchSet track_curve(const Curve& c, double a, double b, int m, const TrackOptions& opt = {});
BranchSet track_curve(const MatrixFamily& F, double a, double b, int m, const TrackOptions& opt = {});

/// Permutation sigma with final_j matched to initial_{sigma(j)}.
std::vector<int> holonomy(const BranchSet& B, const Curve& c, double tol = 1e-10);

/// <A' w | w> for a unit eigenvector w of A with eigenvalue lambda.
Complex onesided_derivative(const Mat& A, const Mat& A_prime, Complex lambda, const Vec& w, double tol = 1e-8);

/// Derivatives of the eigenvalues of a curve at a point with simple spectrum,
/// paired with the eigenvalues: (V^-1 A' V)_jj.
struct EigenDerivatives {
    std::vector<Complex> values;
    std::vector<Complex> derivs;
};
EigenDerivatives eigen_derivatives(const Mat& A, const Mat& A_prime);

}  // namespace normspec
