#pragma once

#include <optional>
#include <vector>

#include "normspec/family.hpp"

namespace normspec {

struct Contour {
    Complex center;
    double radius = 1.0;
    int nodes = 64;
};

struct SpectralProjection {
    Mat P;
    int rank = 0;
    Contour contour;
    /// Quadrature nodes used after doubling.
    int nodes_used = 0;
};

struct ProjectionOptions {
    double proj_tol = 1e-10;
    /// Eigenvalues must stay at least margin·radius away from the circle.
    double margin = 1e-3;
    int max_nodes = 1 << 15;
};

/// Trapezoid rule for (1/2πi)∮(z − A)^-1 dz, doubling K until converged.
SpectralProjection contour_projection(const Mat& A, const Contour& g, const ProjectionOptions& opt = {});

/// round(Re tr P), cross-checked against the count of singular values > 1/2.
int rank_of(const Mat& P);

/// Π_{j≠i} (A − λ_j)/(λ_i − λ_j) over group representatives.
SpectralProjection sylvester_projection(const Mat& A, const std::vector<Complex>& reps, int i,
                                        double sep_tol = 1e-8);

/// Orthonormal basis of range(P) from projected seed columns (Gram–Schmidt,
/// applied twice); first nonzero component of each column is made real positive.
Mat frame_of(const Mat& P, int rank, const std::optional<Mat>& seed = std::nullopt);

/// V* A V; throws NotInvariant when range(V) is not A-invariant.
Mat reduced_matrix(const Mat& A, const Mat& V, double tol = 1e-8);

/// P'P − PP'.
Mat commutator_Q(const Mat& P, const Mat& P_prime);

/// Circle around the eigenvalues in `group` (indices into `eigs`) following the
/// transport policy: centre at the group mean, radius halfway between the
/// group's spread and the nearest other eigenvalue. Throws GapCollapse.
Contour group_contour(const std::vector<Complex>& eigs, const std::vector<int>& group);

struct TransportOptions {
    double trans_tol = 1e-6;
    /// Use the resolvent-product formula for P' instead of finite differences.
    bool resolvent_derivative = false;
    ProjectionOptions projection;
};

struct TransportResult {
    std::vector<double> grid;
    std::vector<Mat> U;
    std::vector<Mat> P;
    /// Eigenvector curves U(t)·frame_of(P(t0)).
    std::vector<Mat> frames;
    double unitarity_residual = 0.0;
    double intertwining_residual = 0.0;
    /// max ‖A v − λ v‖ / ‖A‖ over nodes; only meaningful for a single-eigenvalue group.
    double eigen_residual = 0.0;
};

/// Integrates U' = [P', P] U with U(a) = I by classical RK4 on m uniform steps.
/// `group` selects eigenvalues at t = a by index in (re, im)-sorted order.
/// Throws GapCollapse or ToleranceExceeded.
TransportResult transport(const Curve& c, double a, double b, int m, const std::vector<int>& group,
                          const TransportOptions& opt = {});

/// P'(t) from the resolvent product (1/2πi)∮ R(z) A' R(z) dz on a fixed contour.
Mat projection_derivative_resolvent(const Mat& A, const Mat& A_prime, const Contour& g, int nodes);

}  // namespace normspec
