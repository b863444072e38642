#include "normspec/blowup.hpp"

#include <algorithm>
#include <cmath>

#include "normspec/linalg.hpp"
#include "normspec/monic.hpp"

namespace normspec {

Poly2 blowup_substitute(const Poly2& p, int chart) {
    if (chart != 1 && chart != 2) throw InvalidArgument("blowup_substitute: chart must be 1 or 2");
    return p.substitute_chart(chart);
}

NormalCrossings normal_crossings_form(const Poly2& p) {
    if (p.is_zero()) throw ZeroPolynomial("normal_crossings_form: zero polynomial");
    NormalCrossings r;
    r.alpha = p.min_exponent();
    r.unit = p.divide_monomial(r.alpha);
    r.nc = r.unit.constant_term() != Complex{};
    return r;
}

namespace {

bool leq(const Exponent& a, const Exponent& b) { return a[0] <= b[0] && a[1] <= b[1]; }

std::string exp_string(const Exponent& e) {
    return "(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")";
}

}  // namespace

Exponent monomial_min(const std::vector<Exponent>& exps) {
    if (exps.empty()) throw InvalidArgument("monomial_min: empty set");
    Exponent m = exps.front();
    for (const auto& e : exps) m = {std::min(m[0], e[0]), std::min(m[1], e[1])};
    if (std::find(exps.begin(), exps.end(), m) != exps.end()) return m;
    for (std::size_t i = 0; i < exps.size(); ++i)
        for (std::size_t j = i + 1; j < exps.size(); ++j)
            if (!leq(exps[i], exps[j]) && !leq(exps[j], exps[i]))
                throw NotTotallyOrdered("monomial_min: " + exp_string(exps[i]) + " and " + exp_string(exps[j]) +
                                        " are not comparable");
    throw NotTotallyOrdered("monomial_min: minimum is not attained");
}

std::string path_string(const std::vector<int>& path) {
    std::string s;
    for (int c : path) {
        if (!s.empty()) s += ' ';
        s += "s" + std::to_string(c);
    }
    return s;
}

std::vector<int> ChartTree::leaves() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].kind == ChartNode::Kind::Leaf) out.push_back(int(i));
    return out;
}

int ChartTree::depth() const {
    int d = 0;
    for (const auto& n : nodes) d = std::max(d, int(n.path.size()));
    return d;
}

namespace {

// Dense matrix of bivariate polynomials, row-major.
struct PMat {
    int r = 0, c = 0;
    std::vector<Poly2> a;

    PMat() = default;
    PMat(int r_, int c_) : r(r_), c(c_), a(std::size_t(r_) * c_) {}
    Poly2& operator()(int i, int j) { return a[std::size_t(i) * c + j]; }
    const Poly2& operator()(int i, int j) const { return a[std::size_t(i) * c + j]; }
    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](const Poly2& p) { return p.is_zero(); });
    }
};

Poly2 truncate_degree(const Poly2& p, int D) {
    Poly2 r;
    for (const auto& [e, c] : p.terms())
        if (e[0] + e[1] <= D) r.set(e[0], e[1], c);
    return r;
}

Poly2 homogeneous_part(const Poly2& p, int d) {
    Poly2 r;
    for (const auto& [e, c] : p.terms())
        if (e[0] + e[1] == d) r.set(e[0], e[1], c);
    return r;
}

PMat mul(const PMat& A, const PMat& B, int D) {
    PMat C(A.r, B.c);
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < B.c; ++j) {
            Poly2 s;
            for (int k = 0; k < A.c; ++k)
                if (!A(i, k).is_zero() && !B(k, j).is_zero()) s += A(i, k) * B(k, j);
            C(i, j) = D >= 0 ? truncate_degree(s, D) : s;
        }
    return C;
}

PMat madd(PMat A, const PMat& B, double sign = 1.0) {
    for (std::size_t k = 0; k < A.a.size(); ++k) A.a[k] += B.a[k] * Complex(sign);
    return A;
}

double entry_scale(const std::vector<Poly2>& E) {
    double s = 0.0;
    for (const auto& p : E) s = std::max(s, p.max_abs_coeff());
    return s;
}

void prune_all(std::vector<Poly2>& E, double tol) {
    for (auto& p : E) p = p.pruned(tol);
}

Mat origin_value(const std::vector<Poly2>& E, int n) {
    Mat M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = E[i * n + j].constant_term();
    return M;
}

Exponent substitute_exponent(const Exponent& e, int chart) {
    return chart == 1 ? Exponent{e[0] + e[1], e[1]} : Exponent{e[0], e[0] + e[1]};
}

std::size_t factorial(int k) {
    std::size_t r = 1;
    for (int i = 2; i <= k; ++i) r *= std::size_t(i);
    return r;
}

class Resolver {
public:
    Resolver(ChartTree& tree, const ResolveOptions& opt) : tree_(tree), opt_(opt) {}

    int resolve(std::vector<Poly2> E, int n, std::vector<int> path, Exponent extracted, bool approx, int parent) {
        const double scale = entry_scale(E);
        prune_all(E, opt_.prune_tol * scale);

        ChartNode node;
        node.n = n;
        node.entries = E;
        node.path = path;
        node.extracted = extracted;
        node.approximate = approx;
        node.truncation = approx ? opt_.block_degree : 0;
        node.parent = parent;

        if (n == 1) {
            node.leaf = ChartNode::Leaf::Scalar;
            node.status = ChartNode::Status::Resolved;
            return add(std::move(node));
        }

        const Mat M0 = origin_value(E, n);
        const EigenDecomp ed = eigen_decompose(M0);
        std::vector<Complex> vals(ed.values.data(), ed.values.data() + n);
        const double ctol = opt_.cluster_tol * std::max(M0.norm(), scale);
        const auto groups = cluster_roots(vals, ctol);
        node.isotropy = 1;
        for (const auto& g : groups) node.isotropy *= factorial(int(g.size()));

        if (++steps_ > 20000) return depth_exceeded(std::move(node));

        if (groups.size() > 1) {
            if (groups.size() == std::size_t(n)) {
                node.leaf = ChartNode::Leaf::Distinct;
                node.status = ChartNode::Status::Resolved;
                return add(std::move(node));
            }
            return split(std::move(node), ed, groups, scale);
        }

        // Single eigenvalue at the origin: remove the trace term.
        Poly2 shift;
        for (int i = 0; i < n; ++i) shift += E[i * n + i];
        shift = (shift * Complex(1.0 / n)).pruned(opt_.prune_tol * scale);
        std::vector<Poly2> S = E;
        for (int i = 0; i < n; ++i) S[i * n + i] -= shift;
        prune_all(S, opt_.prune_tol * std::max(scale, 1e-300));
        if (std::all_of(S.begin(), S.end(), [](const Poly2& p) { return p.is_zero(); })) {
            node.leaf = ChartNode::Leaf::Constant;
            node.status = ChartNode::Status::Resolved;
            node.shift = shift;
            return add(std::move(node));
        }

        std::vector<Exponent> entry_exps, all_exps;
        bool crossing = true;
        auto consider = [&](const Poly2& p, bool is_entry) {
            if (p.is_zero()) return;
            const auto nc = normal_crossings_form(p);
            if (!nc.nc) crossing = false;
            all_exps.push_back(nc.alpha);
            if (is_entry) entry_exps.push_back(nc.alpha);
        };
        for (const auto& p : S) consider(p, true);
        const double dtol = opt_.prune_tol * scale;
        for (std::size_t k = 0; k < S.size() && crossing; ++k)
            for (std::size_t l = k + 1; l < S.size() && crossing; ++l)
                if (!S[k].is_zero() || !S[l].is_zero()) consider((S[k] - S[l]).pruned(dtol), false);

        Exponent alpha{0, 0};
        bool ordered = crossing;
        if (ordered) {
            try {
                monomial_min(all_exps);
                alpha = monomial_min(entry_exps);
            } catch (const NotTotallyOrdered&) {
                ordered = false;
            }
        }
        if (!ordered || (alpha[0] == 0 && alpha[1] == 0)) return blowup(std::move(node), n, approx);

        node.kind = ChartNode::Kind::Extract;
        node.status = ChartNode::Status::Split;
        node.shift = shift;
        node.alpha = alpha;
        const int id = add(std::move(node));
        std::vector<Poly2> child(S.size());
        for (std::size_t k = 0; k < S.size(); ++k) child[k] = S[k].divide_monomial(alpha);
        const Exponent ext{extracted[0] + alpha[0], extracted[1] + alpha[1]};
        const int c = resolve(std::move(child), n, path, ext, approx, id);
        tree_.nodes[id].children.push_back(c);
        return id;
    }

private:
    int add(ChartNode n) {
        tree_.nodes.push_back(std::move(n));
        return int(tree_.nodes.size()) - 1;
    }

    int depth_exceeded(ChartNode node) {
        node.kind = ChartNode::Kind::Leaf;
        node.status = ChartNode::Status::DepthExceeded;
        return add(std::move(node));
    }

    int blowup(ChartNode node, int n, bool approx) {
        if (int(node.path.size()) >= opt_.max_depth) return depth_exceeded(std::move(node));
        node.kind = ChartNode::Kind::Blowup;
        node.status = ChartNode::Status::Split;
        const auto E = node.entries;
        const auto path = node.path;
        const auto ext = node.extracted;
        const int id = add(std::move(node));
        for (int chart : {1, 2}) {
            std::vector<Poly2> sub;
            for (const auto& p : E) sub.push_back(blowup_substitute(p, chart));
            auto cpath = path;
            cpath.push_back(chart);
            const int c = resolve(std::move(sub), n, cpath, substitute_exponent(ext, chart), approx, id);
            tree_.nodes[id].children.push_back(c);
        }
        return id;
    }

    // Invariant subspaces of the origin eigenvalue groups, one reduced block each.
    int split(ChartNode node, const EigenDecomp& ed, const std::vector<std::vector<int>>& groups, double scale) {
        const int n = node.n;
        const Mat& V = ed.vectors;
        const Mat Vi = ed.unitary ? Mat(V.adjoint()) : Mat(V.inverse());
        std::vector<int> order;
        for (const auto& g : groups) order.insert(order.end(), g.begin(), g.end());
        PMat B(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Poly2 s;
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        const Poly2& e = node.entries[k * n + l];
                        if (!e.is_zero()) s += e * (Vi(order[i], k) * V(l, order[j]));
                    }
                B(i, j) = s.pruned(opt_.prune_tol * scale);
            }
        node.kind = ChartNode::Kind::Split;
        node.status = ChartNode::Status::Split;
        const auto path = node.path;
        const auto ext = node.extracted;
        const bool approx = node.approximate;
        const int id = add(std::move(node));

        int offset = 0;
        for (const auto& g : groups) {
            const int m = int(g.size());
            std::vector<int> I, J;
            for (int i = 0; i < n; ++i) (i >= offset && i < offset + m ? I : J).push_back(i);
            auto block = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
                PMat P(int(rows.size()), int(cols.size()));
                for (std::size_t i = 0; i < rows.size(); ++i)
                    for (std::size_t j = 0; j < cols.size(); ++j) P(int(i), int(j)) = B(rows[i], cols[j]);
                return P;
            };
            const PMat B11 = block(I, I), B12 = block(I, J), B21 = block(J, I), B22 = block(J, J);
            bool coupled = false;
            PMat R = B11;
            if (!B21.is_zero()) {
                coupled = true;
                const int D = opt_.block_degree;
                PMat X(n - m, m);
                for (int d = 1; d <= D; ++d) {
                    PMat res = madd(madd(B21, mul(B22, X, D)), mul(X, B11, D), -1.0);
                    res = madd(res, mul(mul(X, B12, D), X, D), -1.0);
                    for (int a = 0; a < n - m; ++a)
                        for (int b = 0; b < m; ++b) {
                            const Complex gap = B22(a, a).constant_term() - B11(b, b).constant_term();
                            X(a, b) -= homogeneous_part(res(a, b), d) * (Complex(1.0) / gap);
                        }
                }
                R = madd(B11, mul(B12, X, D));
            }
            std::vector<Poly2> entries(R.a.begin(), R.a.end());
            const int c = resolve(std::move(entries), m, path, ext, approx || coupled, id);
            tree_.nodes[id].children.push_back(c);
            offset += m;
        }
        return id;
    }

    ChartTree& tree_;
    const ResolveOptions& opt_;
    int steps_ = 0;
};

std::vector<Complex> eval_node(const ChartTree& T, int id, Complex x, Complex y) {
    const ChartNode& N = T.nodes[id];
    switch (N.kind) {
        case ChartNode::Kind::Leaf: {
            if (N.status == ChartNode::Status::DepthExceeded)
                throw NoChartCovers("chart_sample: point reaches an unresolved chart " + path_string(N.path));
            if (N.leaf == ChartNode::Leaf::Constant) return std::vector<Complex>(N.n, N.shift.eval(x, y));
            if (N.leaf == ChartNode::Leaf::Scalar) return {N.entries[0].eval(x, y)};
            Mat A(N.n, N.n);
            for (int i = 0; i < N.n; ++i)
                for (int j = 0; j < N.n; ++j) A(i, j) = N.entries[i * N.n + j].eval(x, y);
            return eigenvalues(A);
        }
        case ChartNode::Kind::Extract: {
            auto v = eval_node(T, N.children[0], x, y);
            const Complex c = N.shift.eval(x, y);
            const Complex m = std::pow(x, N.alpha[0]) * std::pow(y, N.alpha[1]);
            for (auto& z : v) z = c + m * z;
            return v;
        }
        case ChartNode::Kind::Split: {
            std::vector<Complex> out;
            for (int c : N.children) {
                auto v = eval_node(T, c, x, y);
                out.insert(out.end(), v.begin(), v.end());
            }
            return out;
        }
        case ChartNode::Kind::Blowup: {
            constexpr double kExceptional = 1e-6;
            if (std::abs(y) <= std::abs(x)) {
                if (std::abs(x) < kExceptional)
                    throw NoChartCovers("chart_sample: point lies on the exceptional locus of " + path_string(N.path));
                return eval_node(T, N.children[0], x, y / x);
            }
            if (std::abs(y) < kExceptional)
                throw NoChartCovers("chart_sample: point lies on the exceptional locus of " + path_string(N.path));
            return eval_node(T, N.children[1], x / y, y);
        }
    }
    return {};
}

}  // namespace

ChartTree resolve_family(const MatrixFamily& F, const ResolveOptions& opt) {
    if (F.kind() != MatrixFamily::Kind::Poly2) throw InvalidArgument("resolve_family requires a Poly2 family");
    const auto cert = normality_check(F);
    if (cert.kind != NormalityCertificate::Kind::Exact)
        throw NotNormal("resolve_family requires an exact normality certificate");
    ChartTree tree;
    tree.family = F;
    tree.max_depth = opt.max_depth;
    Resolver r(tree, opt);
    r.resolve(F.poly_entries(), F.n(), {}, {0, 0}, false, -1);
    if (!opt.allow_partial)
        for (const auto& n : tree.nodes)
            if (n.status == ChartNode::Status::DepthExceeded)
                throw DepthExceeded("resolve_family: chart " + (n.path.empty() ? std::string("(root)") : path_string(n.path)) +
                                    " not resolved within depth " + std::to_string(opt.max_depth));
    return tree;
}

std::vector<Complex> chart_sample(const ChartTree& T, double x, double y) {
    if (T.nodes.empty()) throw NoChartCovers("chart_sample: empty tree");
    return eval_node(T, 0, x, y);
}

}  // namespace normspec
