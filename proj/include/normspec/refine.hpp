#pragma once

#include <vector>

#include "normspec/spectral.hpp"
#include "normspec/tracking.hpp"

namespace normspec {

struct RefineOptions {
    double c1_tol = 1e-6;
    double c2_tol = 1e-4;
    /// Columns that must not be permuted (used when completing a partial parameterization).
    std::vector<int> frozen;
};

/// Re-permutes branch columns to the right of every collision node so that
/// left and right one-sided derivatives agree. Fills left_d / right_d.
/// Collisions must lie on grid nodes. Throws DerivativeSetMismatch.
BranchSet c1_refine(const BranchSet& B, const Curve& c, const RefineOptions& opt = {});

/// Second-order refinement at collision nodes through the deflated family
/// (M(t) − tr M(t)/m)/(t − s) of each cluster. Requires a polynomial curve.
/// Throws DeflationFailed or DerivativeSetMismatch.
BranchSet c2_refine(const BranchSet& B, const Curve& c, const RefineOptions& opt = {});

/// Extends `partial` (k columns on the grid of `full`) to n columns whose rows
/// are the rows of `full` as multisets. Partial columns come first.
/// Throws NotASubMultiset.
BranchSet complete_parameterization(const BranchSet& partial, const BranchSet& full, Smoothness mode,
                                    const Curve& c, const RefineOptions& opt = {});

/// Frame-reduced view of a cluster: V(t)* A(t) V(t) with V(t) = frame_of(P(t))
/// for a fixed contour and seed, so that V depends smoothly on t.
struct ClusterView {
    Contour contour;
    Mat seed;
    int m = 0;
    Mat reduced(const Curve& c, double t) const;
};
ClusterView make_cluster_view(const Mat& A, const std::vector<Complex>& eigs, const std::vector<int>& cluster);

}  // namespace normspec
