#include "normspec/family.hpp"

#include <algorithm>
#include <cmath>

#include "normspec/errors.hpp"

namespace normspec {

namespace {

void check_size(int n, std::size_t count) {
    if (n < 1) throw InvalidArgument("family size must be positive");
    if (count != static_cast<std::size_t>(n) * n)
        throw InvalidArgument("expected " + std::to_string(n * n) + " entries, got " + std::to_string(count));
}

std::string entry_name(int n, std::size_t k) {
    return "entry (" + std::to_string(k / n) + "," + std::to_string(k % n) + ")";
}

Poly2 poly_power(const Poly2& p, int k) {
    Poly2 r(1.0);
    for (int i = 0; i < k; ++i) r = r * p;
    return r;
}

}  // namespace

MatrixFamily MatrixFamily::poly1(int n, std::vector<Poly2> entries, std::string name) {
    check_size(n, entries.size());
    for (const auto& e : entries)
        if (!e.is_univariate()) throw InvalidArgument("one-parameter family entry depends on y");
    MatrixFamily F;
    F.n_ = n;
    F.kind_ = Kind::Poly1;
    F.polys_ = std::move(entries);
    F.name_ = std::move(name);
    F.domain_ = {{-1.0, 1.0}};
    return F;
}

MatrixFamily MatrixFamily::poly2(int n, std::vector<Poly2> entries, std::string name) {
    check_size(n, entries.size());
    MatrixFamily F;
    F.n_ = n;
    F.kind_ = Kind::Poly2;
    F.polys_ = std::move(entries);
    F.name_ = std::move(name);
    F.domain_ = {{-1.0, 1.0}, {-1.0, 1.0}};
    return F;
}

MatrixFamily MatrixFamily::expr1(int n, std::vector<std::string> sources, std::string name) {
    check_size(n, sources.size());
    MatrixFamily F;
    F.n_ = n;
    F.kind_ = Kind::Expr1;
    for (const auto& s : sources) {
        F.exprs_.push_back(parse_expr(s));
        if (F.exprs_.back().uses(ScalarExpr::Op::VarY))
            throw InvalidArgument("one-parameter expression uses y: " + s);
    }
    F.sources_ = std::move(sources);
    F.name_ = std::move(name);
    F.domain_ = {{-1.0, 1.0}};
    return F;
}

void MatrixFamily::set_domain(std::vector<std::pair<double, double>> d) {
    if (static_cast<int>(d.size()) != params()) throw InvalidArgument("domain dimension mismatch");
    for (const auto& [lo, hi] : d)
        if (!(lo <= hi)) throw InvalidArgument("empty domain interval");
    domain_ = std::move(d);
}

void MatrixFamily::add_override(std::vector<double> point, Mat value) {
    if (static_cast<int>(point.size()) != params()) throw InvalidArgument("override point dimension mismatch");
    if (value.rows() != n_ || value.cols() != n_) throw InvalidArgument("override matrix size mismatch");
    overrides_.push_back({std::move(point), std::move(value)});
}

Mat MatrixFamily::eval(const std::vector<double>& p) const {
    if (static_cast<int>(p.size()) != params()) throw InvalidArgument("parameter dimension mismatch");
    for (const auto& o : overrides_)
        if (o.point == p) return o.value;
    Mat A(n_, n_);
    const std::size_t count = static_cast<std::size_t>(n_) * n_;
    for (std::size_t k = 0; k < count; ++k) {
        Complex v;
        if (kind_ == Kind::Expr1) {
            try {
                v = exprs_[k].eval(ExprVars{p[0], p[0], 0.0});
            } catch (const EvalError& e) {
                throw EvalError(entry_name(n_, k) + " at t=" + std::to_string(p[0]) + ": " + e.what());
            }
        } else {
            v = polys_[k].eval(p[0], kind_ == Kind::Poly2 ? p[1] : 0.0);
        }
        A(static_cast<Eigen::Index>(k / n_), static_cast<Eigen::Index>(k % n_)) = v;
    }
    return A;
}

double MatrixFamily::fd_step(double t, double scale) { return 1e-5 * std::max(scale, std::abs(t)); }

Mat MatrixFamily::derivative(const std::vector<double>& p, const std::vector<double>& dir, double scale) const {
    if (static_cast<int>(p.size()) != params() || static_cast<int>(dir.size()) != params())
        throw InvalidArgument("parameter dimension mismatch");
    if (kind_ != Kind::Expr1) {
        Mat D(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const Poly2 d = poly(i, j).directional_derivative(dir[0], kind_ == Kind::Poly2 ? dir[1] : 0.0);
                D(i, j) = d.eval(p[0], kind_ == Kind::Poly2 ? p[1] : 0.0);
            }
        return D;
    }
    const double t = p[0];
    if (!(scale > 0.0)) throw InvalidArgument("difference scale must be positive");
    const double h = fd_step(t, scale);
    const Mat f0 = eval(t);
    const Mat fp = eval(t + h * dir[0]);
    const Mat fm = eval(t - h * dir[0]);
    const Mat fwd = (fp - f0) / h;
    const Mat bwd = (f0 - fm) / h;
    const double jump = (fwd - bwd).cwiseAbs().maxCoeff();
    const double size = std::max(fwd.cwiseAbs().maxCoeff(), bwd.cwiseAbs().maxCoeff());
    if (jump > 0.1 * (1.0 + size))
        throw EvalError("derivative at t=" + std::to_string(t) + ": one-sided quotients differ by " +
                        std::to_string(jump) + " (non-differentiable point)");
    return (fp - fm) / (2.0 * h);
}

MatrixFamily MatrixFamily::derivative_family(const std::vector<double>& dir) const {
    if (kind_ == Kind::Expr1) throw InvalidArgument("derivative_family requires a polynomial family");
    std::vector<Poly2> d;
    for (const auto& p : polys_) d.push_back(p.directional_derivative(dir.at(0), kind_ == Kind::Poly2 ? dir.at(1) : 0.0));
    MatrixFamily F = *this;
    F.polys_ = std::move(d);
    F.overrides_.clear();
    return F;
}

MatrixFamily MatrixFamily::restrict_to_line(double x0, double y0, double dx, double dy) const {
    if (kind_ != Kind::Poly2) throw InvalidArgument("restrict_to_line requires a two-parameter family");
    const Poly2 X = Poly2(x0) + Poly2::x() * Complex(dx);
    const Poly2 Y = Poly2(y0) + Poly2::x() * Complex(dy);
    std::vector<Poly2> out;
    for (const auto& p : polys_) {
        Poly2 r;
        for (const auto& [e, c] : p.terms()) r += poly_power(X, e[0]) * poly_power(Y, e[1]) * c;
        out.push_back(r);
    }
    return poly1(n_, std::move(out), name_ + " (line)");
}

NormalityCertificate normality_check(const MatrixFamily& F) {
    const int n = F.n();
    NormalityCertificate cert;
    if (F.is_polynomial()) {
        double scale = 0.0;
        for (const auto& p : F.poly_entries()) scale = std::max(scale, p.max_abs_coeff());
        double worst = 0.0;
        std::string witness;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                // (AA* − A*A)_{ij} with (A*)_{kl} = conj(A_{lk}).
                Poly2 r;
                for (int k = 0; k < n; ++k) {
                    r += F.poly(i, k) * F.poly(j, k).conj();
                    r -= F.poly(k, i).conj() * F.poly(k, j);
                }
                for (const auto& [e, c] : r.terms())
                    if (std::abs(c) > worst) {
                        worst = std::abs(c);
                        witness = "entry (" + std::to_string(i) + "," + std::to_string(j) + ") coefficient of x^" +
                                  std::to_string(e[0]) + " y^" + std::to_string(e[1]);
                    }
            }
        cert.kind = NormalityCertificate::Kind::Exact;
        cert.max_residual = worst;
        if (worst > 1e-12 * (1.0 + scale * scale))
            throw NotNormal("AA*-A*A has nonzero " + witness + " (" + std::to_string(worst) + ")");
        return cert;
    }
    const auto [lo, hi] = F.domain().front();
    cert.kind = NormalityCertificate::Kind::Sampled;
    for (int k = 0; k <= 100; ++k) {
        const double t = lo + (hi - lo) * k / 100.0;
        const Mat A = F.eval(t);
        const double r = normality_residual(A);
        cert.max_residual = std::max(cert.max_residual, r);
        const double s = A.norm();
        if (r > 1e-10 * (1.0 + s * s))
            throw NotNormal("AA*-A*A has residual " + std::to_string(r) + " at t=" + std::to_string(t));
    }
    return cert;
}

MonicSeries char_poly_series(const MatrixFamily& F, std::size_t T) {
    if (F.kind() != MatrixFamily::Kind::Poly1) throw InvalidArgument("char_poly_series requires a Poly1 family");
    const int n = F.n();
    std::vector<Series> flat;
    for (const auto& p : F.poly_entries()) flat.push_back(p.to_series(T));
    return MonicSeries{faddeev_leverrier<Series>(flat, n, Series::constant(1.0, T))};
}

Curve make_curve(const MatrixFamily& F, double fd_scale) {
    if (F.params() != 1) throw InvalidArgument("make_curve requires a one-parameter family");
    Curve c;
    c.n = F.n();
    c.value = [F](double t) { return F.eval(t); };
    c.deriv = [F, fd_scale](double t) { return F.derivative(t, fd_scale); };
    c.polynomial = F.is_polynomial();
    return c;
}

Curve make_line_curve(const MatrixFamily& F, double x0, double y0, double dx, double dy) {
    if (F.params() == 1) {
        Curve c;
        c.n = F.n();
        c.value = [F, x0, dx](double t) { return F.eval(x0 + dx * t); };
        c.deriv = [F, x0, dx](double t) { return Mat(F.derivative(x0 + dx * t) * dx); };
        c.polynomial = F.is_polynomial();
        return c;
    }
    return make_curve(F.restrict_to_line(x0, y0, dx, dy));
}

}  // namespace normspec
