#include "normspec/spectral.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "normspec/errors.hpp"

namespace normspec {

namespace {

// Sum over the nodes k = offset, offset+stride, ... of a K-node rule.
Mat quadrature_sum(const Mat& A, const Contour& g, int K, int offset, int stride) {
    const int n = static_cast<int>(A.rows());
    Mat S = Mat::Zero(n, n);
    const Mat I = Mat::Identity(n, n);
    for (int k = offset; k < K; k += stride) {
        const double th = 2.0 * M_PI * k / K;
        const Complex e(std::cos(th), std::sin(th));
        const Complex z = g.center + g.radius * e;
        S += (g.radius * e) * Mat((z * I - A).partialPivLu().solve(I));
    }
    return S;
}

}  // namespace

SpectralProjection contour_projection(const Mat& A, const Contour& g, const ProjectionOptions& opt) {
    if (!(g.radius > 0.0)) throw InvalidArgument("contour radius must be positive");
    for (Complex lam : eigenvalues(A)) {
        const double d = std::abs(std::abs(lam - g.center) - g.radius);
        if (d <= opt.margin * g.radius)
            throw ContourHitsSpectrum("eigenvalue within " + std::to_string(d) + " of the contour");
    }
    int K = std::max(4, g.nodes);
    Mat sum = quadrature_sum(A, g, K, 0, 1);
    Mat P = sum / static_cast<double>(K);
    for (;;) {
        if (2 * K > opt.max_nodes) throw QuadratureNotConverged("no convergence with " + std::to_string(K) + " nodes");
        // The 2K-node rule reuses the K existing nodes and adds the odd ones.
        sum += quadrature_sum(A, g, 2 * K, 1, 2);
        K *= 2;
        const Mat next = sum / static_cast<double>(K);
        const double change = (next - P).norm();
        P = next;
        if (change < opt.proj_tol) break;
    }
    SpectralProjection sp;
    sp.P = P;
    sp.rank = rank_of(P);
    sp.contour = g;
    sp.nodes_used = K;
    return sp;
}

int rank_of(const Mat& P) {
    const double tr = P.trace().real();
    const double r = std::round(tr);
    if (std::abs(tr - r) > 0.1) throw AmbiguousRank("trace " + std::to_string(tr) + " is not near an integer");
    int count = 0;
    if (P.size() > 0) {
        Eigen::JacobiSVD<Mat> svd(P);
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > 0.5) ++count;
    }
    if (count != static_cast<int>(r))
        throw AmbiguousRank("trace suggests rank " + std::to_string(static_cast<int>(r)) + " but " +
                            std::to_string(count) + " singular values exceed 1/2");
    return count;
}

SpectralProjection sylvester_projection(const Mat& A, const std::vector<Complex>& reps, int i, double sep_tol) {
    const int g = static_cast<int>(reps.size());
    if (i < 0 || i >= g) throw InvalidArgument("group index out of range");
    for (int p = 0; p < g; ++p)
        for (int q = p + 1; q < g; ++q)
            if (std::abs(reps[p] - reps[q]) <= sep_tol)
                throw GroupsNotSeparated("groups " + std::to_string(p) + " and " + std::to_string(q) +
                                         " are closer than " + std::to_string(sep_tol));
    const int n = static_cast<int>(A.rows());
    Mat P = Mat::Identity(n, n);
    for (int j = 0; j < g; ++j)
        if (j != i) P = P * (A - reps[j] * Mat::Identity(n, n)) / (reps[i] - reps[j]);
    SpectralProjection sp;
    sp.P = P;
    sp.rank = rank_of(P);
    return sp;
}

Mat frame_of(const Mat& P, int rank, const std::optional<Mat>& seed) {
    const int n = static_cast<int>(P.rows());
    Mat S;
    if (seed) {
        if (seed->rows() != n || seed->cols() != rank) throw InvalidArgument("seed has wrong shape");
        S = *seed;
    } else {
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return P.col(a).norm() > P.col(b).norm(); });
        S.resize(n, rank);
        for (int j = 0; j < rank; ++j) S.col(j) = Vec::Unit(n, idx[j]);
    }
    Mat V = P * S;
    for (int j = 0; j < rank; ++j) {
        const double before = V.col(j).norm();
        for (int pass = 0; pass < 2; ++pass)
            for (int l = 0; l < j; ++l) V.col(j) -= V.col(l).dot(V.col(j)) * V.col(l);
        const double nrm = V.col(j).norm();
        if (nrm < 1e-8 || nrm < 1e-8 * before) throw SeedDegenerate("projected seed column " + std::to_string(j) + " is degenerate");
        V.col(j) /= nrm;
        for (int i = 0; i < n; ++i)
            if (std::abs(V(i, j)) > 1e-12) {
                V.col(j) *= std::conj(V(i, j)) / std::abs(V(i, j));
                break;
            }
    }
    return V;
}

Mat reduced_matrix(const Mat& A, const Mat& V, double tol) {
    const Mat M = V.adjoint() * A * V;
    const double res = (A * V - V * M).norm();
    if (res > tol * (1.0 + A.norm())) throw NotInvariant("range is not invariant: residual " + std::to_string(res));
    return M;
}

Mat commutator_Q(const Mat& P, const Mat& P_prime) { return P_prime * P - P * P_prime; }

Contour group_contour(const std::vector<Complex>& eigs, const std::vector<int>& group) {
    if (group.empty()) throw InvalidArgument("empty eigenvalue group");
    Complex mu{};
    for (int i : group) mu += eigs.at(i);
    mu /= static_cast<double>(group.size());
    double inner = 0.0;
    for (int i : group) inner = std::max(inner, std::abs(eigs[i] - mu));
    double outer = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(eigs.size()); ++i)
        if (std::find(group.begin(), group.end(), i) == group.end()) outer = std::min(outer, std::abs(eigs[i] - mu));
    Contour c;
    c.center = mu;
    if (!std::isfinite(outer)) {
        c.radius = inner + 1.0;
        return c;
    }
    if (outer <= inner * (1.0 + 1e-6) + 1e-12)
        throw GapCollapse("eigenvalue group is not separated from the rest of the spectrum");
    c.radius = 0.5 * (inner + outer);
    return c;
}

Mat projection_derivative_resolvent(const Mat& A, const Mat& A_prime, const Contour& g, int nodes) {
    // d/dt (z − A)^-1 = R A' R, so P' = (1/2πi)∮ R A' R dz.
    const int n = static_cast<int>(A.rows());
    const Mat I = Mat::Identity(n, n);
    Mat S = Mat::Zero(n, n);
    for (int k = 0; k < nodes; ++k) {
        const double th = 2.0 * M_PI * k / nodes;
        const Complex e(std::cos(th), std::sin(th));
        const Mat R = (g.center + g.radius * e) * I - A;
        const Mat Ri = R.partialPivLu().solve(I);
        S += (g.radius * e) * Mat(Ri * A_prime * Ri);
    }
    return S / static_cast<double>(nodes);
}

}  // namespace normspec
