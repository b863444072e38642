#include "normspec/monic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "normspec/errors.hpp"

namespace normspec {

std::vector<Complex> MonicPoly::power_coeffs() const {
    const int n = degree();
    std::vector<Complex> c(n + 1);
    c[n] = 1.0;
    for (int j = 1; j <= n; ++j) c[n - j] = (j % 2 ? -1.0 : 1.0) * a[j - 1];
    return c;
}

Complex MonicPoly::eval(Complex z) const {
    const auto c = power_coeffs();
    Complex acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double MonicPoly::eval_scale(Complex z) const {
    const auto c = power_coeffs();
    const double r = std::abs(z);
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
}

double MonicPoly::max_abs_coeff() const {
    double m = 0.0;
    for (auto v : a) m = std::max(m, std::abs(v));
    return m;
}

std::size_t MonicSeries::trunc() const {
    std::size_t t = std::numeric_limits<std::size_t>::max();
    for (const auto& s : a) t = std::min(t, s.trunc());
    return a.empty() ? 0 : t;
}

MonicPoly MonicSeries::at_zero() const {
    MonicPoly p;
    for (const auto& s : a) p.a.push_back(s[0]);
    return p;
}

MonicPoly MonicSeries::specialize(Complex t) const {
    MonicPoly p;
    for (const auto& s : a) p.a.push_back(s.eval(t));
    return p;
}

MonicPoly from_roots(const std::vector<Complex>& roots) {
    // e[j] = e_j of the roots processed so far.
    std::vector<Complex> e(roots.size() + 1);
    e[0] = 1.0;
    for (std::size_t m = 0; m < roots.size(); ++m)
        for (std::size_t j = m + 1; j >= 1; --j) e[j] += e[j - 1] * roots[m];
    return MonicPoly{std::vector<Complex>(e.begin() + 1, e.end())};
}

MonicSeries from_series_roots(const std::vector<Series>& roots) {
    std::size_t trunc = std::numeric_limits<std::size_t>::max();
    for (const auto& r : roots) trunc = std::min(trunc, r.trunc());
    if (roots.empty()) return {};
    std::vector<Series> e(roots.size() + 1, Series(trunc));
    e[0] = Series::constant(1.0, trunc);
    for (std::size_t m = 0; m < roots.size(); ++m)
        for (std::size_t j = m + 1; j >= 1; --j) e[j] += e[j - 1] * roots[m];
    return MonicSeries{std::vector<Series>(e.begin() + 1, e.end())};
}

std::vector<Complex> poly_roots(const MonicPoly& p, const RootOptions& opt) {
    const int n = p.degree();
    if (n < 1) throw InvalidArgument("poly_roots: degree must be at least 1");
    const auto c = p.power_coeffs();
    if (n == 1) return {p.a[0]};

    // Fujiwara-type bound around the centroid a_1/n.
    const Complex center = p.a[0] / static_cast<double>(n);
    double radius = 0.0;
    for (int j = 1; j <= n; ++j) radius = std::max(radius, std::pow(std::abs(p.a[j - 1]), 1.0 / j));
    if (radius == 0.0) return std::vector<Complex>(n, Complex{});
    radius = std::max(radius, 1e-300);

    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * M_PI * k / n + 0.4;
        z[k] = center + radius * Complex(std::cos(th), std::sin(th));
    }

    auto horner = [&](Complex x, Complex& dp) {
        Complex v = c[n];
        dp = 0.0;
        for (int k = n - 1; k >= 0; --k) {
            dp = dp * x + v;
            v = v * x + c[k];
        }
        return v;
    };

    constexpr double kEps = std::numeric_limits<double>::epsilon();
    std::vector<char> done(n, 0);
    for (int it = 0; it < opt.max_iters; ++it) {
        bool all = true;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            Complex dp;
            const Complex v = horner(z[i], dp);
            if (std::abs(v) <= 4.0 * kEps * p.eval_scale(z[i])) {
                done[i] = 1;
                continue;
            }
            all = false;
            Complex s{};
            for (int j = 0; j < n; ++j)
                if (j != i && z[i] != z[j]) s += 1.0 / (z[i] - z[j]);
            const Complex ratio = v / dp;
            Complex w = ratio / (1.0 - ratio * s);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = Complex(radius * 1e-3, 0.0);
            z[i] -= w;
            if (std::abs(w) <= 2.0 * kEps * std::abs(z[i])) done[i] = 1;
        }
        if (all) break;
    }

    for (int i = 0; i < n; ++i) {
        const double res = std::abs(p.eval(z[i]));
        if (res > opt.root_tol * std::max(1.0, p.eval_scale(z[i])))
            throw NoConvergence("poly_roots: residual " + std::to_string(res) + " after " +
                                std::to_string(opt.max_iters) + " iterations");
    }
    return z;
}

Complex delta_k(const std::vector<Complex>& roots, int k) {
    const int n = static_cast<int>(roots.size());
    if (k < 1 || k > n) throw InvalidArgument("delta_k: k out of range");
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    Complex total{};
    for (;;) {
        Complex prod{1.0};
        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q) {
                const Complex d = roots[idx[p]] - roots[idx[q]];
                prod *= d * d;
            }
        total += prod;
        int p = k - 1;
        while (p >= 0 && idx[p] == n - k + p) --p;
        if (p < 0) break;
        ++idx[p];
        for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
    }
    return total;
}

int distinct_count(const std::vector<Complex>& roots, double tol) {
    const int n = static_cast<int>(roots.size());
    for (int k = n; k >= 2; --k)
        if (std::abs(delta_k(roots, k)) > tol) return k;
    return 1;
}

std::vector<std::vector<int>> cluster_roots(const std::vector<Complex>& roots, double tol) {
    const int n = static_cast<int>(roots.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) <= tol) parent[std::max(find(i), find(j))] = std::min(find(i), find(j));
    std::vector<std::vector<int>> out;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(i);
    }
    return out;
}

}  // namespace normspec
