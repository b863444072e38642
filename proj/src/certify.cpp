#include "normspec/certify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "normspec/errors.hpp"

namespace normspec {

LipschitzReport lipschitz_certificate(const BranchSet& B, const Curve& c, double slack) {
    LipschitzReport r;
    r.slack = slack;
    const int n = B.n();
    r.branch_max.assign(n, 0.0);
    for (int k = 0; k < B.nodes(); ++k) {
        r.bound = std::max(r.bound, op_norm(c.deriv(B.grid[k])));
        if (k + 1 < B.nodes()) r.bound = std::max(r.bound, op_norm(c.deriv(0.5 * (B.grid[k] + B.grid[k + 1]))));
    }
    for (int k = 0; k + 1 < B.nodes(); ++k) {
        const double h = B.grid[k + 1] - B.grid[k];
        for (int j = 0; j < n; ++j) {
            const double q = std::abs(B.values[k + 1][j] - B.values[k][j]) / h;
            r.branch_max[j] = std::max(r.branch_max[j], q);
            if (q > r.worst) {
                r.worst = q;
                r.worst_branch = j;
                r.worst_t = B.grid[k];
            }
        }
    }
    r.margin = r.bound * (1.0 + slack) - r.worst;
    r.pass = r.margin >= 0.0;
    return r;
}

namespace {

bool hermitian(const Mat& A) { return (A - A.adjoint()).norm() <= 1e-10 * (1.0 + A.norm()); }
bool skew_hermitian(const Mat& A) { return (A + A.adjoint()).norm() <= 1e-10 * (1.0 + A.norm()); }

Eigen::VectorXd sorted_real_spectrum(const Mat& H) {
    const Mat S = 0.5 * (H + H.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(S, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace

BoundCheck weyl_check(const Mat& A, const Mat& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw InvalidArgument("weyl_check: size mismatch");
    Mat HA = A, HB = B;
    if (!(hermitian(A) && hermitian(B))) {
        if (!(skew_hermitian(A) && skew_hermitian(B)))
            throw NotHermitian("weyl_check needs two Hermitian or two skew-Hermitian matrices");
        HA = Complex(0, -1) * A;
        HB = Complex(0, -1) * B;
    }
    const Eigen::VectorXd a = sorted_real_spectrum(HA), b = sorted_real_spectrum(HB);
    BoundCheck r;
    r.lhs = (a - b).cwiseAbs().maxCoeff();
    r.rhs = op_norm(A - B);
    r.ratio = r.rhs > 0 ? r.lhs / r.rhs : 0.0;
    r.pass = r.lhs <= r.rhs + 1e-9;
    return r;
}

double spectral_bottleneck(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) throw InvalidArgument("spectra have different sizes");
    if (a.size() > 8) return bottleneck_match(a, b).cost;
    std::vector<int> p(a.size());
    std::iota(p.begin(), p.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double m = 0.0;
        for (std::size_t j = 0; j < a.size() && m < best; ++j) m = std::max(m, std::abs(a[j] - b[p[j]]));
        best = std::min(best, m);
    } while (std::next_permutation(p.begin(), p.end()));
    return a.empty() ? 0.0 : best;
}

BoundCheck bhatia_check(const Mat& A, const Mat& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw InvalidArgument("bhatia_check: size mismatch");
    if (!is_normal(A) || !is_normal(B)) throw NotNormal("bhatia_check needs normal matrices");
    BoundCheck r;
    r.lhs = spectral_bottleneck(eigenvalues(A), eigenvalues(B));
    const double d = op_norm(A - B);
    r.rhs = 3.0 * d;
    r.ratio = d > 0 ? r.lhs / d : 0.0;
    r.pass = r.lhs <= r.rhs;
    return r;
}

ContinuityReport continuity_certificate(const std::vector<MatrixFamily>& loops, int m) {
    ContinuityReport r;
    for (const auto& F : loops) {
        const auto [a, b] = F.domain().front();
        const Curve c = make_curve(F, b - a);
        LoopHolonomy h;
        h.label = F.name();
        h.perm = holonomy(track_curve(c, a, b, m), c);
        for (std::size_t j = 0; j < h.perm.size(); ++j) h.identity = h.identity && h.perm[j] == static_cast<int>(j);
        r.pass = r.pass && h.identity;
        r.loops.push_back(std::move(h));
    }
    return r;
}

}  // namespace normspec
