#include "normspec/refine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "normspec/errors.hpp"
#include "normspec/spectral.hpp"

namespace normspec {

namespace {

double scale_of(const std::vector<Complex>& v) {
    double s = 0.0;
    for (auto x : v) s = std::max(s, std::abs(x));
    return s;
}

std::vector<std::vector<int>> collisions(const std::vector<Complex>& row) {
    std::vector<std::vector<int>> out;
    for (auto& cl : cluster_roots(row, 1e-9 * (1.0 + scale_of(row))))
        if (cl.size() >= 2) out.push_back(cl);
    return out;
}

std::vector<Complex> pick(const std::vector<Complex>& v, const std::vector<int>& idx) {
    std::vector<Complex> r;
    for (int i : idx) r.push_back(v[i]);
    return r;
}

// Indices of the m entries of `eigs` nearest to mu.
std::vector<int> nearest(const std::vector<Complex>& eigs, Complex mu, int m) {
    std::vector<int> idx(eigs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return std::abs(eigs[a] - mu) < std::abs(eigs[b] - mu); });
    idx.resize(m);
    return idx;
}

// Derivatives of the m eigenvalues of A nearest mu. Nearly equal eigenvalues
// are treated as one block and get the eigenvalues of the compressed derivative.
std::vector<Complex> derivative_set(const Mat& A, const Mat& Ad, Complex mu, int m) {
    const EigenDecomp d = eigen_decompose(A);
    std::vector<Complex> eigs(d.values.data(), d.values.data() + d.values.size());
    const auto idx = nearest(eigs, mu, m);
    std::vector<Complex> out;
    if (!d.unitary) {
        const Mat M = d.vectors.partialPivLu().solve(Ad * d.vectors);
        for (int i : idx) out.push_back(M(i, i));
        return out;
    }
    const auto sel = pick(eigs, idx);
    for (const auto& g : cluster_roots(sel, 1e-6 * (1.0 + scale_of(eigs)))) {
        Mat W(A.rows(), static_cast<Eigen::Index>(g.size()));
        for (std::size_t l = 0; l < g.size(); ++l) W.col(static_cast<Eigen::Index>(l)) = d.vectors.col(idx[g[l]]);
        const Mat B = W.adjoint() * Ad * W;
        for (Complex v : eigenvalues(B)) out.push_back(v);
    }
    return out;
}

// Snaps each estimate to a distinct member of `targets` by bottleneck matching.
std::vector<Complex> snap(const std::vector<Complex>& est, const std::vector<Complex>& targets) {
    const Assignment a = bottleneck_match(est, targets);
    std::vector<Complex> r;
    for (int j : a.sigma) r.push_back(targets[j]);
    return r;
}

void ensure_derivative_rows(BranchSet& B) {
    if (B.left_d.empty()) B.left_d.assign(B.nodes(), std::vector<Complex>(B.n()));
    if (B.right_d.empty()) B.right_d.assign(B.nodes(), std::vector<Complex>(B.n()));
}

// Derivatives of simple columns at node k from the eigen decomposition at s.
// Where the family is not differentiable at s, one-sided values at s -/+ 1e-4
// are used instead.
void fill_simple_derivatives(BranchSet& B, const Curve& c, int k) {
    auto at = [&](double t, std::vector<Complex>& dst) {
        const auto ed = eigen_derivatives(c.value(t), c.deriv(t));
        const Assignment a = bottleneck_match(B.values[k], ed.values);
        for (int j = 0; j < B.n(); ++j) dst[j] = ed.derivs[a.sigma[j]];
    };
    const double s = B.grid[k];
    try {
        at(s, B.left_d[k]);
        B.right_d[k] = B.left_d[k];
    } catch (const EvalError&) {
        const double d = 1e-4 * std::max(1.0, std::abs(s));
        at(s - d, B.left_d[k]);
        at(s + d, B.right_d[k]);
    }
}

// Applies the within-cluster permutation `pi` (left column cl[j] continues as
// right column cl[pi[j]]) to all nodes after k, respecting frozen columns.
void apply_cluster_perm(BranchSet& B, int k, const std::vector<int>& cl, const std::vector<int>& pi) {
    std::vector<int> cols(B.n());
    std::iota(cols.begin(), cols.end(), 0);
    bool identity = true;
    for (std::size_t j = 0; j < cl.size(); ++j) {
        cols[cl[j]] = cl[pi[j]];
        identity = identity && pi[j] == static_cast<int>(j);
    }
    if (!identity) B.permute_columns(cols, k + 1);
}

// Permutation over the cluster that only moves non-frozen columns.
std::vector<int> match_keys(const std::vector<std::vector<double>>& cost, const std::vector<int>& cl,
                            const std::vector<int>& frozen, double& worst) {
    const int m = static_cast<int>(cl.size());
    std::vector<int> free_idx;
    for (int j = 0; j < m; ++j)
        if (std::find(frozen.begin(), frozen.end(), cl[j]) == frozen.end()) free_idx.push_back(j);
    std::vector<int> pi(m);
    std::iota(pi.begin(), pi.end(), 0);
    const int f = static_cast<int>(free_idx.size());
    Eigen::MatrixXd C(f, f);
    for (int a = 0; a < f; ++a)
        for (int b = 0; b < f; ++b) C(a, b) = cost[free_idx[a]][free_idx[b]];
    const Assignment as = bottleneck_assign(C);
    for (int a = 0; a < f; ++a) pi[free_idx[a]] = free_idx[as.sigma[a]];
    worst = 0.0;
    for (int j = 0; j < m; ++j) worst = std::max(worst, cost[j][pi[j]]);
    return pi;
}

// Offset for one-sided eigenvector limits; sampled families keep it above
// their difference-quotient step.
double c1_delta(const BranchSet& B, int k, const Curve& c) {
    const double s = B.grid[k];
    const double h = std::min(s - B.grid[k - 1], B.grid[k + 1] - s);
    const double base = c.polynomial ? 1e-7 : 1e-4;
    return std::min(base * std::max(1.0, std::abs(s)), h / 4);
}

}  // namespace

Mat ClusterView::reduced(const Curve& c, double t) const {
    const Mat A = c.value(t);
    const Mat P = contour_projection(A, contour).P;
    const Mat V = frame_of(P, m, seed);
    return V.adjoint() * A * V;
}

ClusterView make_cluster_view(const Mat& A, const std::vector<Complex>& eigs, const std::vector<int>& cluster) {
    ClusterView v;
    v.m = static_cast<int>(cluster.size());
    v.contour = group_contour(eigs, cluster);
    const Mat P = contour_projection(A, v.contour).P;
    const Mat V = frame_of(P, v.m);
    v.seed = V;
    return v;
}

BranchSet c1_refine(const BranchSet& in, const Curve& c, const RefineOptions& opt) {
    BranchSet B = in;
    ensure_derivative_rows(B);
    for (int k = 0; k < B.nodes(); ++k) {
        fill_simple_derivatives(B, c, k);
        if (k == 0 || k + 1 == B.nodes()) continue;
        const double s = B.grid[k];
        for (const auto& cl : collisions(B.values[k])) {
            const int m = static_cast<int>(cl.size());
            Complex mu{};
            for (int j : cl) mu += B.values[k][j];
            mu /= static_cast<double>(m);
            const double delta = c1_delta(B, k, c);
            const auto Dm = derivative_set(c.value(s - delta), c.deriv(s - delta), mu, m);
            const auto Dp = derivative_set(c.value(s + delta), c.deriv(s + delta), mu, m);
            const double hL = s - B.grid[k - 1], hR = B.grid[k + 1] - s;
            std::vector<Complex> sl, sr;
            for (int j : cl) {
                sl.push_back((B.values[k][j] - B.values[k - 1][j]) / hL);
                sr.push_back((B.values[k + 1][j] - B.values[k][j]) / hR);
            }
            const auto L = snap(sl, Dm);
            const auto R = snap(sr, Dp);
            std::vector<std::vector<double>> cost(m, std::vector<double>(m));
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) cost[a][b] = std::abs(L[a] - R[b]);
            double worst = 0.0;
            const auto pi = match_keys(cost, cl, opt.frozen, worst);
            const double tol = opt.c1_tol * (1.0 + std::max(scale_of(Dm), scale_of(Dp)));
            if (worst > tol)
                throw DerivativeSetMismatch("one-sided derivative sets differ by " + std::to_string(worst) +
                                            " at t=" + std::to_string(s));
            apply_cluster_perm(B, k, cl, pi);
            for (int j = 0; j < m; ++j) {
                B.left_d[k][cl[j]] = L[j];
                B.right_d[k][cl[j]] = R[pi[j]];
            }
        }
    }
    for (auto& tag : B.tags) tag = std::max(tag, Smoothness::C1);
    return B;
}

BranchSet c2_refine(const BranchSet& in, const Curve& c, const RefineOptions& opt) {
    if (!c.polynomial) throw InvalidArgument("c2_refine requires a polynomial family");
    BranchSet B = in;
    ensure_derivative_rows(B);
    B.marked.clear();
    for (int k = 0; k < B.nodes(); ++k) {
        fill_simple_derivatives(B, c, k);
        if (k == 0 || k + 1 == B.nodes()) continue;
        const double s = B.grid[k];
        const double hL = s - B.grid[k - 1], hR = B.grid[k + 1] - s;
        const double delta = std::min(1e-4, std::min(hL, hR) / 4);
        const Mat As = c.value(s);
        const auto eigs = B.values[k];
        for (const auto& cl : collisions(B.values[k])) {
            const int m = static_cast<int>(cl.size());
            const ClusterView view = make_cluster_view(As, eigs, cl);
            const Mat Ms = view.reduced(c, s);
            const Complex mu = Ms.trace() / static_cast<double>(m);
            const double defl = (Ms - mu * Mat::Identity(m, m)).norm();
            if (defl > 1e-8 * (1.0 + As.norm()))
                throw DeflationFailed("cluster at t=" + std::to_string(s) + " is not a multiple of the identity (" +
                                      std::to_string(defl) + ")");

            // Deflated family and its value at s by l'Hopital.
            const Mat Vs = frame_of(contour_projection(As, view.contour).P, m, view.seed);
            Mat Ts = Vs.adjoint() * c.deriv(s) * Vs;
            Ts -= (Ts.trace() / static_cast<double>(m)) * Mat::Identity(m, m);
            auto deflated = [&](double t) {
                Mat M = view.reduced(c, t);
                M -= (M.trace() / static_cast<double>(m)) * Mat::Identity(m, m);
                return Mat(M / (t - s));
            };
            const auto key_targets = eigenvalues(Ts);
            const double kscale = 1.0 + scale_of(key_targets);

            auto keys = [&](int nb, double side) {
                std::vector<Complex> q;
                Complex mean{};
                for (int j : cl) mean += B.values[nb][j];
                mean /= static_cast<double>(m);
                const double dt = B.grid[nb] - s;
                for (int j : cl) q.push_back((B.values[nb][j] - mean) / dt);
                const auto k1 = snap(q, key_targets);
                std::vector<Complex> k2(m);
                const double t1 = s + side * delta, hf = delta / 8;
                const Mat T1 = deflated(t1);
                const Mat T1d = (deflated(t1 + hf) - deflated(t1 - hf)) / (2 * hf);
                for (const auto& sub : cluster_roots(k1, 1e-8 * kscale)) {
                    if (sub.size() < 2) continue;
                    const auto D = derivative_set(T1, T1d, k1[sub[0]], static_cast<int>(sub.size()));
                    std::vector<Complex> est;
                    for (int j : sub) est.push_back((q[j] - k1[j]) / dt);
                    const auto sn = snap(est, D);
                    for (std::size_t l = 0; l < sub.size(); ++l) k2[sub[l]] = sn[l];
                }
                return std::pair{k1, k2};
            };
            const auto [L1, L2] = keys(k - 1, -1.0);
            const auto [R1, R2] = keys(k + 1, 1.0);
            std::vector<std::vector<double>> cost(m, std::vector<double>(m));
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) cost[a][b] = std::max(std::abs(L1[a] - R1[b]), std::abs(L2[a] - R2[b]));
            double worst = 0.0;
            const auto pi = match_keys(cost, cl, opt.frozen, worst);
            const double tol = opt.c2_tol * (kscale + scale_of(L2) + scale_of(R2));
            if (worst > tol)
                throw DerivativeSetMismatch("second-order keys differ by " + std::to_string(worst) + " at t=" +
                                            std::to_string(s));
            apply_cluster_perm(B, k, cl, pi);
            const Complex dmean = (Vs.adjoint() * c.deriv(s) * Vs).trace() / static_cast<double>(m);
            for (int j = 0; j < m; ++j) {
                B.left_d[k][cl[j]] = dmean + L1[j];
                B.right_d[k][cl[j]] = dmean + R1[pi[j]];
            }
            B.marked.push_back(k);
        }
    }
    for (auto& tag : B.tags) tag = Smoothness::C2;
    return B;
}

BranchSet complete_parameterization(const BranchSet& partial, const BranchSet& full, Smoothness mode,
                                    const Curve& c, const RefineOptions& opt) {
    const int n = full.n();
    const int kcols = partial.values.empty() ? 0 : partial.n();
    if (kcols == 0) {
        if (mode == Smoothness::C0) return full;
        return mode == Smoothness::C1 ? c1_refine(full, c, opt) : c2_refine(full, c, opt);
    }
    if (partial.nodes() != full.nodes()) throw InvalidArgument("partial and full grids differ");
    BranchSet out;
    out.grid = full.grid;
    for (int k = 0; k < full.nodes(); ++k) {
        std::vector<Complex> rest = full.values[k];
        std::vector<Complex> row = partial.values[k];
        const double tol = 1e-8 * (1.0 + scale_of(rest));
        for (Complex v : partial.values[k]) {
            auto it = std::min_element(rest.begin(), rest.end(),
                                       [&](Complex a, Complex b) { return std::abs(a - v) < std::abs(b - v); });
            if (it == rest.end() || std::abs(*it - v) > tol)
                throw NotASubMultiset("partial values are not contained in the spectrum at node " + std::to_string(k));
            rest.erase(it);
        }
        if (k > 0) {
            const std::vector<Complex> prev(out.values[k - 1].begin() + kcols, out.values[k - 1].end());
            const Assignment a = bottleneck_match(prev, rest);
            for (int j : a.sigma) row.push_back(rest[j]);
        } else {
            row.insert(row.end(), rest.begin(), rest.end());
        }
        out.values.push_back(row);
        std::vector<int> id(n);
        std::iota(id.begin(), id.end(), 0);
        out.perms.push_back(id);
    }
    out.tags.assign(n, Smoothness::C0);
    if (mode == Smoothness::C0) return out;
    RefineOptions o = opt;
    for (int j = 0; j < kcols; ++j) o.frozen.push_back(j);
    return mode == Smoothness::C1 ? c1_refine(out, c, o) : c2_refine(out, c, o);
}

}  // namespace normspec
