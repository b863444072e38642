#include "normspec/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "normspec/errors.hpp"

namespace normspec {

std::vector<Complex> BranchSet::column(int j) const {
    std::vector<Complex> c;
    for (const auto& row : values) c.push_back(row.at(j));
    return c;
}

void BranchSet::permute_columns(const std::vector<int>& cols, int from_node) {
    auto apply = [&](std::vector<Complex>& row) {
        std::vector<Complex> r(row.size());
        for (std::size_t j = 0; j < cols.size(); ++j) r[j] = row[cols[j]];
        row = r;
    };
    for (int k = from_node; k < nodes(); ++k) {
        apply(values[k]);
        std::vector<int> p(cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) p[j] = perms[k][cols[j]];
        perms[k] = p;
        if (!left_d.empty()) apply(left_d[k]);
        if (!right_d.empty()) apply(right_d[k]);
    }
}

std::vector<Complex> sorted_eigenvalues(const Mat& A) {
    auto v = eigenvalues(A);
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
}

namespace {

struct Node {
    double t;
    std::vector<Complex> raw;
    std::vector<Complex> row;
    std::vector<int> perm;
};

double cluster_tol(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double s = 0.0;
    for (auto v : a) s = std::max(s, std::abs(v));
    for (auto v : b) s = std::max(s, std::abs(v));
    return 1e-9 * (1.0 + s);
}

std::vector<int> cluster_ids(const std::vector<Complex>& v, double tol) {
    std::vector<int> id(v.size());
    const auto cl = cluster_roots(v, tol);
    for (std::size_t c = 0; c < cl.size(); ++c)
        for (int i : cl[c]) id[i] = static_cast<int>(c);
    return id;
}

// A step is ambiguous when exchanging the targets of two branches that start
// in different clusters and end in different clusters costs less than
// cost / gap_ratio.
bool ambiguous(const std::vector<Complex>& prev, const std::vector<Complex>& next, const Assignment& a,
               double gap_ratio) {
    const double tol = cluster_tol(prev, next);
    if (a.cost <= tol) return false;
    const auto pid = cluster_ids(prev, tol);
    const auto nid = cluster_ids(next, tol);
    const int n = static_cast<int>(prev.size());
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            if (pid[j] == pid[k] || nid[a.sigma[j]] == nid[a.sigma[k]]) continue;
            const double swapped = std::max(std::abs(prev[j] - next[a.sigma[k]]), std::abs(prev[k] - next[a.sigma[j]]));
            if (a.cost > gap_ratio * swapped) return true;
        }
    return false;
}

class Tracker {
public:
    Tracker(const Curve& c, const TrackOptions& opt) : c_(c), opt_(opt) {}

    void step(const Node& from, double t1, std::vector<Node>& out, int depth) {
        const std::vector<Complex> raw = sorted_eigenvalues(c_.value(t1));
        const Assignment a = bottleneck_match(from.row, raw);
        if (ambiguous(from.row, raw, a, opt_.gap_ratio)) {
            if (depth >= opt_.max_depth)
                throw RefinementExhausted("ambiguous matching persists on [" + std::to_string(from.t) + ", " +
                                          std::to_string(t1) + "]");
            const double tm = 0.5 * (from.t + t1);
            step(from, tm, out, depth + 1);
            const Node mid = out.back();
            step(mid, t1, out, depth + 1);
            return;
        }
        Node n{t1, raw, {}, a.sigma};
        for (int j : a.sigma) n.row.push_back(raw[j]);
        out.push_back(std::move(n));
    }

private:
    const Curve& c_;
    const TrackOptions& opt_;
};

}  // namespace

BranchSet track_curve(const Curve& c, double a, double b, int m, const TrackOptions& opt) {
    if (m < 1) throw InvalidArgument("track_curve: need at least one step");
    if (!(a < b)) throw InvalidArgument("track_curve: empty interval");
    const int n = c.n;

    Node first{a, sorted_eigenvalues(c.value(a)), {}, {}};
    std::vector<int> order = opt.initial_order;
    if (order.empty()) {
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
    }
    if (static_cast<int>(order.size()) != n) throw InvalidArgument("initial_order has wrong length");
    for (int j = 0; j < n; ++j) {
        first.perm.push_back(order[j]);
        first.row.push_back(first.raw[order[j]]);
    }

    std::vector<Node> nodes{first};
    Tracker tr(c, opt);
    for (int k = 1; k <= m; ++k) {
        const double t1 = k == m ? b : a + (b - a) * k / m;
        const Node from = nodes.back();
        tr.step(from, t1, nodes, 0);
    }

    BranchSet B;
    for (auto& nd : nodes) {
        B.grid.push_back(nd.t);
        B.values.push_back(std::move(nd.row));
        B.perms.push_back(std::move(nd.perm));
    }
    B.tags.assign(n, Smoothness::C0);
    return B;
}

BranchSet track_curve(const MatrixFamily& F, double a, double b, int m, const TrackOptions& opt) {
    return track_curve(make_curve(F), a, b, m, opt);
}

std::vector<int> holonomy(const BranchSet& B, const Curve& c, double tol) {
    if (B.nodes() < 2) throw NotALoop("branch set has fewer than two nodes");
    const Mat A0 = c.value(B.grid.front());
    const Mat A1 = c.value(B.grid.back());
    const double diff = (A1 - A0).norm();
    if (diff > tol * (1.0 + A0.norm()))
        throw NotALoop("endpoint matrices differ by " + std::to_string(diff));
    return bottleneck_match(B.values.back(), B.values.front()).sigma;
}

Complex onesided_derivative(const Mat& A, const Mat& A_prime, Complex lambda, const Vec& w, double tol) {
    if (std::abs(w.norm() - 1.0) > tol) throw NotAnEigenpair("vector is not normalized");
    const double res = (A * w - lambda * w).norm();
    if (res > tol * (1.0 + A.norm())) throw NotAnEigenpair("eigen-residual " + std::to_string(res));
    return w.dot(A_prime * w);
}

EigenDerivatives eigen_derivatives(const Mat& A, const Mat& A_prime) {
    const EigenDecomp d = eigen_decompose(A);
    EigenDerivatives out;
    const Mat M = d.unitary ? Mat(d.vectors.adjoint() * A_prime * d.vectors)
                            : Mat(d.vectors.partialPivLu().solve(A_prime * d.vectors));
    for (Eigen::Index j = 0; j < d.values.size(); ++j) {
        out.values.push_back(d.values(j));
        out.derivs.push_back(M(j, j));
    }
    return out;
}

}  // namespace normspec
