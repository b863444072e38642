#include "normspec/formal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace normspec {

namespace {

constexpr double kClusterTol = 1e-6;
constexpr double kOrderTol = 1e-10;
constexpr double kTaylorTol = 1e-12;
constexpr double kSameBranchTol = 1e-9;

struct FractionalSlope {
    int p;
    int q;
};

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double poly_scale(const MonicPoly& p) {
    double s = 0.0;
    for (int j = 1; j <= p.degree(); ++j) s = std::max(s, std::pow(std::abs(p.a[j - 1]), 1.0 / j));
    return s;
}

double series_scale(const MonicSeries& P) {
    double s = 0.0;
    for (int j = 1; j <= P.degree(); ++j) s = std::max(s, std::pow(P.a[j - 1].max_abs(), 1.0 / j));
    return s;
}

// Threshold below which a coefficient of the Hankel determinant Δ̃_k is noise.
double delta_threshold(int n, int k, double scale) {
    return kOrderTol * factorial(k) * std::pow(double(n), k) * std::pow(scale, k * (k - 1));
}

// Index of the last nonzero coefficient, or -1.
int last_nonzero(const Series& s) {
    for (int k = int(s.trunc()) - 1; k >= 0; --k)
        if (s[k] != Complex{}) return k;
    return -1;
}

bool tail_unknown(const Series& s) {
    return s.trunc() > 0 && last_nonzero(s) == int(s.trunc()) - 1;
}

// Restates a polynomial-read coefficient at truncation T (shorter if its tail is unknown).
Series at_truncation(const Series& s, std::size_t T) {
    if (T <= s.trunc()) return s.truncated(T);
    return tail_unknown(s) ? s : s.extended(T);
}

MonicSeries at_truncation(const MonicSeries& P, std::size_t T) {
    MonicSeries r;
    for (const auto& a : P.a) r.a.push_back(at_truncation(a, T));
    return r;
}

std::size_t uniform_trunc(MonicSeries& P) {
    const std::size_t T = P.trunc();
    for (auto& a : P.a) a = a.truncated(T);
    return T;
}

// z-power coefficients c_0..c_n (c_n = 1) of a monic series polynomial.
std::vector<Series> power_form(const MonicSeries& P) {
    const int n = P.degree();
    const std::size_t T = P.trunc();
    std::vector<Series> c(n + 1);
    c[n] = Series::constant(1.0, T);
    for (int j = 1; j <= n; ++j) c[n - j] = (j % 2 ? -1.0 : 1.0) * P.a[j - 1].truncated(T);
    return c;
}

MonicSeries from_power_form(const std::vector<Series>& c) {
    const int n = int(c.size()) - 1;
    MonicSeries P;
    for (int j = 1; j <= n; ++j) P.a.push_back((j % 2 ? -1.0 : 1.0) * c[n - j]);
    return P;
}

// Roots of P(z + s) as a monic series polynomial.
MonicSeries taylor_shift(const MonicSeries& P, const Series& s) {
    const auto c = power_form(P);
    const int n = P.degree();
    const std::size_t T = std::min(P.trunc(), s.trunc());
    std::vector<Series> pw(n + 1);
    pw[0] = Series::constant(1.0, T);
    for (int k = 1; k <= n; ++k) pw[k] = pw[k - 1] * s;
    std::vector<Series> q(n + 1, Series(T));
    for (int j = 0; j <= n; ++j)
        for (int k = j; k <= n; ++k) q[j] += binom(k, j) * (c[k] * pw[k - j]);
    return from_power_form(q);
}

struct Cluster {
    Complex center;
    int mult = 1;
};

// An m-fold root at z makes the first m Taylor coefficients of p vanish.
bool genuine_multiple_root(const MonicPoly& p, Complex z, int m, double scale) {
    const auto c = p.power_coeffs();
    const int n = p.degree();
    const double R = std::max(std::abs(z), scale);
    for (int i = 0; i < m; ++i) {
        Complex b{};
        double bound = 0.0;
        for (int k = i; k <= n; ++k) {
            const double w = binom(k, i);
            b += w * c[k] * std::pow(z, k - i);
            bound += w * std::abs(c[k]) * std::pow(R, k - i);
        }
        if (std::abs(b) > kTaylorTol * bound) return false;
    }
    return true;
}

// An m-fold root is a simple root of the (m-1)-th derivative.
Complex polish_center(const MonicPoly& p, Complex z, int m) {
    if (m < 2) return z;
    const auto c = p.power_coeffs();
    const int n = p.degree();
    std::vector<Complex> d(c.begin() + (m - 1), c.end());
    for (int k = 0; k < int(d.size()); ++k) d[k] *= std::tgamma(k + m) / std::tgamma(k + 1);
    for (int it = 0; it < 8; ++it) {
        Complex v{}, dv{};
        for (int k = n - m + 1; k >= 0; --k) {
            dv = dv * z + v;
            v = v * z + d[k];
        }
        if (dv == Complex{}) break;
        const Complex step = v / dv;
        z -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
    return z;
}

// scale_floor carries the root scale of the polynomial a factor was split from.
std::vector<Cluster> clusters_at_zero(const MonicPoly& p0, double scale_floor, double* scale_used = nullptr) {
    const int n = p0.degree();
    const double S = std::max(poly_scale(p0), scale_floor);
    if (scale_used) *scale_used = S;
    if (S == 0.0) return {Cluster{0.0, n}};
    const auto roots = poly_roots(p0);
    auto build = [&](double tol) {
        std::vector<Cluster> out;
        for (const auto& idx : cluster_roots(roots, tol * S)) {
            Complex c{};
            for (int i : idx) c += roots[i];
            const int m = int(idx.size());
            out.push_back(Cluster{polish_center(p0, c / double(m), m), m});
        }
        return out;
    };
    auto best = build(kClusterTol);
    for (double tol : {1e-5, 1e-4, 1e-3}) {
        auto cand = build(tol);
        if (cand.size() >= best.size()) continue;
        bool ok = true;
        for (const auto& c : cand)
            if (c.mult > 1 && !genuine_multiple_root(p0, c.center, c.mult, S)) ok = false;
        if (ok) best = std::move(cand);
    }
    return best;
}

using ZPoly = std::vector<Series>;  // z-power coefficients

ZPoly zmul(const ZPoly& a, const ZPoly& b, std::size_t T) {
    ZPoly r(a.size() + b.size() - 1, Series(T));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i].truncated(T) * b[j].truncated(T);
    return r;
}

std::vector<Complex> cmul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> r(a.size() + b.size() - 1, Complex{});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<MonicSeries> hensel(const MonicSeries& P, const std::vector<Cluster>& cl, std::size_t T) {
    const int n = P.degree();
    const int H = int(cl.size());
    const auto c = power_form(at_truncation(P, T));
    std::vector<int> off(H + 1, 0);
    for (int h = 0; h < H; ++h) off[h + 1] = off[h] + cl[h].mult;

    // Constant terms, refined by Newton steps on the factorization of P(0).
    std::vector<std::vector<Complex>> f0(H);
    for (int h = 0; h < H; ++h) {
        f0[h] = {1.0};
        for (int k = 0; k < cl[h].mult; ++k) f0[h] = cmul(f0[h], {-cl[h].center, 1.0});
    }
    auto cofactor_matrix = [&]() {
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
        for (int h = 0; h < H; ++h) {
            std::vector<Complex> q{1.0};
            for (int l = 0; l < H; ++l)
                if (l != h) q = cmul(q, f0[l]);
            for (int i = 0; i < cl[h].mult; ++i)
                for (std::size_t k = 0; k < q.size(); ++k) M(i + k, off[h] + i) = q[k];
        }
        return Eigen::PartialPivLU<Eigen::MatrixXcd>(M);
    };
    for (int it = 0; it < 3; ++it) {
        std::vector<Complex> prod{1.0};
        for (int h = 0; h < H; ++h) prod = cmul(prod, f0[h]);
        Eigen::VectorXcd r(n);
        for (int i = 0; i < n; ++i) r(i) = c[i][0] - prod[i];
        const Eigen::VectorXcd g = cofactor_matrix().solve(r);
        for (int h = 0; h < H; ++h)
            for (int i = 0; i < cl[h].mult; ++i) f0[h][i] += g(off[h] + i);
    }
    const auto lu = cofactor_matrix();

    std::vector<ZPoly> F(H);
    for (int h = 0; h < H; ++h) {
        F[h].assign(cl[h].mult + 1, Series(T));
        for (int i = 0; i < cl[h].mult; ++i) F[h][i].at(0) = f0[h][i];
        F[h][cl[h].mult] = Series::constant(1.0, T);
    }
    for (std::size_t k = 1; k < T; ++k) {
        ZPoly prod{Series::constant(1.0, k + 1)};
        for (int h = 0; h < H; ++h) prod = zmul(prod, F[h], k + 1);
        Eigen::VectorXcd r(n);
        for (int i = 0; i < n; ++i) r(i) = c[i][k] - prod[i][k];
        const Eigen::VectorXcd g = lu.solve(r);
        for (int h = 0; h < H; ++h)
            for (int i = 0; i < cl[h].mult; ++i) F[h][i].at(k) = g(off[h] + i);
    }
    std::vector<MonicSeries> out;
    for (const auto& f : F) out.push_back(from_power_form(f));
    return out;
}

void expand_rec(const MonicSeries& P, std::vector<Series>& out, int depth, double scale_floor) {
    const int n = P.degree();
    const std::size_t T = P.trunc();
    if (T == 0 || depth > 4096) {
        for (int i = 0; i < n; ++i) out.push_back(Series(0));
        return;
    }
    if (n == 1) {
        out.push_back(P.a[0]);
        return;
    }
    double S0 = 0.0;
    const auto cl = clusters_at_zero(P.at_zero(), scale_floor, &S0);
    if (cl.size() > 1) {
        for (const auto& f : hensel(P, cl, T)) expand_rec(f, out, depth + 1, S0);
        return;
    }
    const Series shift = P.a[0].truncated(T) / double(n);
    const MonicSeries Q = taylor_shift(P, shift);
    const double S = series_scale(P);
    int best_j = 0, best_w = 0;
    for (int j = 2; j <= n; ++j) {
        const int w = Q.a[j - 1].order_abs(kOrderTol * std::pow(S, j));
        if (w == kInfiniteOrder) continue;
        if (best_j == 0 || double(w) * best_j < double(best_w) * j) {
            best_j = j;
            best_w = w;
        }
    }
    if (best_j == 0) {
        for (int i = 0; i < n; ++i) out.push_back(shift);
        return;
    }
    const int g = std::gcd(best_w, best_j);
    const int p = best_w / g, q = best_j / g;
    if (q != 1) throw FractionalSlope{p, q};
    if (p == 0) throw NoConvergence("branch_expand: single cluster at t=0 with a nonvanishing shifted coefficient");
    MonicSeries R;
    for (int j = 1; j <= n; ++j) R.a.push_back(Q.a[j - 1].shift_down(j * p));
    uniform_trunc(R);
    std::vector<Series> sub;
    expand_rec(R, sub, depth + 1, 0.0);
    for (const auto& w : sub) out.push_back(shift + w.shift_up(p));
}

MonicSeries compose(const MonicSeries& P, int gamma, std::size_t T) {
    const std::size_t Tt = (T + gamma - 1) / gamma + 1;
    MonicSeries r;
    for (const auto& a : at_truncation(P, Tt).a) r.a.push_back(a.compose_power(gamma).truncated(T));
    return r;
}

Expansion finalize(std::vector<Series> roots, const MonicSeries& target, int gamma, std::size_t T) {
    Expansion e;
    e.gamma = gamma;
    for (auto& r : roots) r = r.truncated(T);
    const auto rebuilt = from_series_roots(roots);
    for (int j = 0; j < target.degree(); ++j)
        for (std::size_t k = 0; k < T; ++k)
            e.residual = std::max(e.residual, std::abs(rebuilt.a[j][k] - target.a[j][k]));
    for (const auto& r : roots) {
        bool merged = false;
        for (auto& b : e.branches) {
            if ((b.series - r).max_abs() <= kSameBranchTol * (1.0 + r.max_abs())) {
                ++b.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) e.branches.push_back(SeriesBranch{r, gamma, 1});
    }
    return e;
}

Expansion run_expansion(const MonicSeries& P, const ExpandOptions& opt, bool allow_ramification) {
    const std::size_t T = opt.truncation;
    if (P.degree() == 0) return Expansion{};
    int gamma = 1;
    const int gamma_cap = int(std::min(1e6, factorial(P.degree())));
    for (std::size_t Ti = T + opt.extra; Ti <= std::max(opt.max_internal, T + opt.extra); Ti *= 2) {
        while (true) {
            MonicSeries Pg = compose(P, gamma, Ti);
            std::vector<Series> roots;
            try {
                expand_rec(Pg, roots, 0, 0.0);
            } catch (const FractionalSlope& f) {
                if (!allow_ramification)
                    throw NonIntegerSlope("branch_expand: contact slope " + std::to_string(f.p) + "/" +
                                          std::to_string(f.q) + " is not an integer");
                gamma *= f.q;
                if (gamma > gamma_cap) throw FlatContact("puiseux_expand: ramification index exceeds n!");
                continue;
            }
            std::size_t achieved = Ti;
            for (const auto& r : roots) achieved = std::min(achieved, r.trunc());
            if (achieved >= T) {
                auto e = finalize(std::move(roots), compose(P, gamma, T), gamma, T);
                e.internal_truncation = Ti;
                return e;
            }
            break;
        }
    }
    throw TruncationExhausted("branch expansion did not reach truncation " + std::to_string(T));
}

}  // namespace

std::vector<Series> power_sums(const MonicSeries& P, int count) {
    const int n = P.degree();
    const std::size_t T = P.trunc();
    std::vector<Series> p(count + 1, Series(T));
    p[0] = Series::constant(double(n), T);
    auto e = [&](int i) { return i <= n ? P.a[i - 1].truncated(T) : Series(T); };
    for (int k = 1; k <= count; ++k) {
        Series s(T);
        for (int i = 1; i < k && i <= n; ++i) s += ((i - 1) % 2 ? -1.0 : 1.0) * (e(i) * p[k - i]);
        if (k <= n) s += ((k - 1) % 2 ? -1.0 : 1.0) * double(k) * e(k);
        p[k] = s;
    }
    return p;
}

Series delta_series(const MonicSeries& P, int k) {
    const std::size_t T = P.trunc();
    if (k < 1 || k > P.degree()) throw InvalidArgument("delta_series: k out of range");
    const auto p = power_sums(P, 2 * k - 2);
    // Division-free expansion of det [p_{i+j}] over row prefixes and column subsets.
    std::vector<Series> f(std::size_t(1) << k, Series(T));
    std::vector<bool> seen(f.size(), false);
    f[0] = Series::constant(1.0, T);
    seen[0] = true;
    for (unsigned mask = 0; mask < f.size(); ++mask) {
        if (!seen[mask]) continue;
        const int row = __builtin_popcount(mask);
        if (row == k) continue;
        for (int col = 0; col < k; ++col) {
            if (mask & (1u << col)) continue;
            const int above = __builtin_popcount(mask >> (col + 1));
            Series term = f[mask] * p[row + col];
            if (above % 2) term = -term;
            f[mask | (1u << col)] += term;
            seen[mask | (1u << col)] = true;
        }
    }
    return f.back();
}

NonflatReport nonflat_check(const MonicSeries& P, std::size_t T) {
    const int n = P.degree();
    NonflatReport rep;
    if (n <= 1) return rep;
    // Degree of each coefficient as a polynomial in t; -1 marks an unknown tail.
    std::vector<int> deg(n);
    std::size_t Te = T;
    for (int j = 0; j < n; ++j) {
        if (tail_unknown(P.a[j])) {
            deg[j] = -1;
            Te = std::min(Te, P.a[j].trunc());
        } else {
            deg[j] = std::max(0, last_nonzero(P.a[j]));
        }
    }
    const MonicSeries Pt = at_truncation(P, Te);
    const double S = series_scale(Pt);
    for (int k = n; k >= 2; --k) {
        const int w = delta_series(Pt, k).order_abs(delta_threshold(n, k, S));
        if (w == kInfiniteOrder) continue;
        rep.k_max = k;
        rep.order = w;
        break;
    }
    if (rep.k_max == n) return rep;
    // Δ̃_{k_max+1} is a weighted-homogeneous polynomial in the a_j of weight
    // k(k-1); its t-degree stays below Te exactly when the zero is proven.
    const int k = rep.k_max + 1;
    bool proven = true;
    for (int j = 1; j <= n; ++j)
        if (deg[j - 1] < 0 || double(k) * (k - 1) * deg[j - 1] >= double(j) * double(Te)) proven = false;
    if (!proven) {
        rep.flat = true;
        throw TruncationInconclusive(rep, "nonflat_check: Δ̃_" + std::to_string(k) +
                                              " vanishes up to truncation " + std::to_string(Te));
    }
    return rep;
}

MultOrderResult mult_order_check(const MonicSeries& P, int r) {
    const int n = P.degree();
    if (r < 0) throw InvalidArgument("mult_order_check: r must be nonnegative");
    const std::size_t T = P.trunc();
    const double S = series_scale(P);
    if (n >= 1 && P.a[0].truncated(T).max_abs() > kOrderTol * std::max(S, 1e-300))
        throw HypothesisViolated("mult_order_check: a_1 must vanish");
    auto vanishes_below = [&](const Series& s, long bound, double thr) {
        const long lim = std::min<long>(bound, long(T));
        for (long i = 0; i < lim; ++i)
            if (std::abs(s[i]) > thr) return false;
        return true;
    };
    MultOrderResult res;
    res.condA = true;
    for (int j = 2; j <= n; ++j)
        if (!vanishes_below(P.a[j - 1], long(j) * r, kOrderTol * std::pow(S, j))) res.condA = false;
    res.condB = true;
    for (int j = 2; j <= n; ++j)
        if (!vanishes_below(delta_series(P, j), long(j) * (j - 1) * r, delta_threshold(n, j, S)))
            res.condB = false;
    res.agree = res.condA == res.condB;
    return res;
}

std::vector<MonicSeries> split_series(const MonicSeries& P, std::size_t T) {
    if (P.degree() < 2) throw ClustersNotSeparated("split_series: degree below 2");
    const auto cl = clusters_at_zero(P.at_zero(), 0.0);
    if (cl.size() < 2) throw ClustersNotSeparated("split_series: P(0) has a single root cluster");
    return hensel(P, cl, std::min(T, at_truncation(P, T).trunc()));
}

Expansion branch_expand(const MonicSeries& P, const ExpandOptions& opt) {
    return run_expansion(P, opt, false);
}

Expansion branch_expand(const MatrixFamily& F, const ExpandOptions& opt) {
    if (F.kind() != MatrixFamily::Kind::Poly1) throw InvalidArgument("branch_expand requires a Poly1 family");
    const auto cert = normality_check(F);
    if (cert.kind != NormalityCertificate::Kind::Exact)
        throw NotNormal("branch_expand requires an exact normality certificate");
    int dmax = 0;
    for (const auto& p : F.poly_entries()) dmax = std::max(dmax, p.total_degree());
    return run_expansion(char_poly_series(F, std::size_t(F.n()) * dmax + 2), opt, false);
}

Expansion puiseux_expand(const MonicSeries& P, const ExpandOptions& opt) {
    try {
        nonflat_check(P, opt.truncation + opt.extra);
    } catch (const TruncationInconclusive& e) {
        throw FlatContact(std::string("puiseux_expand: ") + e.what());
    }
    return run_expansion(P, opt, true);
}

std::vector<Complex> evaluate_branches(const Expansion& e, double t) {
    std::vector<Complex> out;
    for (const auto& b : e.branches) {
        const Complex s = b.gamma == 1 ? Complex(t) : std::pow(Complex(t), 1.0 / b.gamma);
        const Complex v = b.series.eval(s);
        for (int m = 0; m < b.multiplicity; ++m) out.push_back(v);
    }
    return out;
}

int branch_count(const Expansion& e) {
    int c = 0;
    for (const auto& b : e.branches) c += b.multiplicity;
    return c;
}

}  // namespace normspec
