#pragma once

#include <string>
#include <vector>

#include "normspec/tracking.hpp"

namespace normspec {

struct LipschitzReport {
    /// Largest adjacent difference quotient of each branch.
    std::vector<double> branch_max;
    double worst = 0.0;
    int worst_branch = -1;
    /// Left end of the grid step where the worst quotient occurs.
    double worst_t = 0.0;
    /// max ‖A'‖ over grid nodes and step midpoints.
    double bound = 0.0;
    double slack = 1e-6;
    /// bound·(1 + slack) − worst.
    double margin = 0.0;
    bool pass = false;
};

LipschitzReport lipschitz_certificate(const BranchSet& B, const Curve& c, double slack = 1e-6);

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    /// lhs / ‖A − B‖ (0 when A = B).
    double ratio = 0.0;
    bool pass = false;
};

/// Sorted-eigenvalue distance against ‖A − B‖ for Hermitian (or skew-Hermitian) pairs.
BoundCheck weyl_check(const Mat& A, const Mat& B);

/// Bottleneck distance of the spectra against 3‖A − B‖ for normal pairs.
BoundCheck bhatia_check(const Mat& A, const Mat& B);

struct LoopHolonomy {
    std::string label;
    std::vector<int> perm;
    bool identity = true;
};

struct ContinuityReport {
    std::vector<LoopHolonomy> loops;
    /// No loop permutes the branches.
    bool pass = true;
};

/// Tracks each closed one-parameter family over its declared domain with m
/// steps. A continuous single-valued selection on a region containing the
/// loops would give every loop the identity holonomy.
ContinuityReport continuity_certificate(const std::vector<MatrixFamily>& loops, int m);

/// Exact min over permutations of max_j |a_j − b_σ(j)| (exhaustive for n ≤ 8,
/// threshold matching beyond).
double spectral_bottleneck(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace normspec
