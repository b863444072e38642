#include "normspec/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "normspec/errors.hpp"

namespace normspec {

namespace {

using BoolMat = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

bool augment(int j, const BoolMat& adj, std::vector<int>& match_col, std::vector<char>& seen) {
    for (int k = 0; k < adj.cols(); ++k) {
        if (!adj(j, k) || seen[k]) continue;
        seen[k] = 1;
        if (match_col[k] < 0 || augment(match_col[k], adj, match_col, seen)) {
            match_col[k] = j;
            return true;
        }
    }
    return false;
}

bool has_perfect_matching(const BoolMat& adj) {
    const int n = static_cast<int>(adj.rows());
    std::vector<int> match_col(n, -1);
    for (int j = 0; j < n; ++j) {
        std::vector<char> seen(n, 0);
        if (!augment(j, adj, match_col, seen)) return false;
    }
    return true;
}

// Shortest augmenting path Hungarian method with potentials, 1-based arrays.
double hungarian(const Eigen::MatrixXd& w, std::vector<int>& sigma) {
    const int n = static_cast<int>(w.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1), v(n + 1);
    std::vector<int> p(n + 1), way(n + 1);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = w(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    sigma.assign(n, -1);
    double total = 0.0;
    for (int j = 1; j <= n; ++j) {
        sigma[p[j] - 1] = j - 1;
        total += w(p[j] - 1, j - 1);
    }
    return total;
}

}  // namespace

bool min_sum_assign(const Eigen::MatrixXd& weight, const BoolMat& allowed, std::vector<int>& sigma, double& total) {
    const int n = static_cast<int>(weight.rows());
    if (n == 0) {
        sigma.clear();
        total = 0.0;
        return true;
    }
    if (!has_perfect_matching(allowed)) return false;
    double big = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (allowed(i, j)) big += std::abs(weight(i, j));
    big *= 4.0 * n;
    Eigen::MatrixXd w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = allowed(i, j) ? weight(i, j) : big;
    hungarian(w, sigma);
    total = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!allowed(i, sigma[i])) return false;
        total += weight(i, sigma[i]);
    }
    return true;
}

Assignment bottleneck_assign(const Eigen::MatrixXd& cost) {
    if (cost.rows() != cost.cols()) throw InvalidArgument("bottleneck_assign: cost matrix must be square");
    const int n = static_cast<int>(cost.rows());
    Assignment out;
    if (n == 0) return out;

    std::vector<double> cand(cost.data(), cost.data() + cost.size());
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::size_t lo = 0, hi = cand.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (has_perfect_matching((cost.array() <= cand[mid]).matrix()))
            hi = mid;
        else
            lo = mid + 1;
    }
    const double tau = cand[lo];
    BoolMat allowed = (cost.array() <= tau).matrix();
    const Eigen::MatrixXd sq = cost.array().square().matrix();

    std::vector<int> sigma;
    double best = 0.0;
    min_sum_assign(sq, allowed, sigma, best);
    const double slack = 1e-12 * (1.0 + best);

    // Lexicographic tie-break: fix sigma(j) to the smallest column that still
    // admits an optimal completion.
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (!allowed(j, k)) continue;
            BoolMat trial = allowed;
            for (int c = 0; c < n; ++c) trial(j, c) = (c == k);
            for (int r = 0; r < n; ++r)
                if (r != j) trial(r, k) = false;
            std::vector<int> s;
            double total = 0.0;
            if (min_sum_assign(sq, trial, s, total) && total <= best + slack) {
                allowed = trial;
                sigma = s;
                break;
            }
        }
    }
    out.sigma = sigma;
    out.cost = 0.0;
    for (int j = 0; j < n; ++j) out.cost = std::max(out.cost, cost(j, sigma[j]));
    return out;
}

Assignment bottleneck_match(const std::vector<Complex>& prev, const std::vector<Complex>& next) {
    if (prev.size() != next.size()) throw InvalidArgument("bottleneck_match: lengths differ");
    const int n = static_cast<int>(prev.size());
    Eigen::MatrixXd cost(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) cost(j, k) = std::abs(prev[j] - next[k]);
    return bottleneck_assign(cost);
}

}  // namespace normspec
