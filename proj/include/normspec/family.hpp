#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "normspec/expr.hpp"
#include "normspec/linalg.hpp"
#include "normspec/poly2.hpp"

namespace normspec {

/// A parameter-dependent n×n complex matrix.
///
/// Poly1 families depend on a single parameter t (stored as x in Poly2 terms),
/// Poly2 families on (x, y), Expr1 families on t through expression entries in
/// which x is an alias of t.
class MatrixFamily {
public:
    enum class Kind { Poly1, Poly2, Expr1 };

    struct Override {
        std::vector<double> point;
        Mat value;
    };

    static MatrixFamily poly1(int n, std::vector<Poly2> entries, std::string name = {});
    static MatrixFamily poly2(int n, std::vector<Poly2> entries, std::string name = {});
    static MatrixFamily expr1(int n, std::vector<std::string> sources, std::string name = {});

    int n() const noexcept { return n_; }
    Kind kind() const noexcept { return kind_; }
    int params() const noexcept { return kind_ == Kind::Poly2 ? 2 : 1; }
    bool is_polynomial() const noexcept { return kind_ != Kind::Expr1; }
    const std::string& name() const noexcept { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    const std::vector<Poly2>& poly_entries() const noexcept { return polys_; }
    const Poly2& poly(int i, int j) const { return polys_.at(i * n_ + j); }
    const std::vector<std::string>& expr_sources() const noexcept { return sources_; }

    /// Declared domain, one closed interval per parameter.
    const std::vector<std::pair<double, double>>& domain() const noexcept { return domain_; }
    void set_domain(std::vector<std::pair<double, double>> d);
    const std::vector<Override>& overrides() const noexcept { return overrides_; }
    void add_override(std::vector<double> point, Mat value);

    /// Throws EvalError naming the entry on failure.
    Mat eval(const std::vector<double>& p) const;
    Mat eval(double t) const { return eval(std::vector<double>{t}); }
    /// Directional derivative; polynomial kinds are exact, Expr1 uses a
    /// central difference with step fd_step(t, scale) and rejects kinks.
    Mat derivative(const std::vector<double>& p, const std::vector<double>& dir, double scale = 1.0) const;
    Mat derivative(double t, double scale = 1.0) const { return derivative({t}, {1.0}, scale); }
    /// Step used by the Expr1 difference quotient at t: 1e-5·max(scale, |t|).
    static double fd_step(double t, double scale = 1.0);

    /// Entrywise directional derivative as a polynomial family (same kind).
    MatrixFamily derivative_family(const std::vector<double>& dir) const;
    /// Restriction of a two-parameter family to the line p0 + t·dir.
    MatrixFamily restrict_to_line(double x0, double y0, double dx, double dy) const;

private:
    int n_ = 0;
    Kind kind_ = Kind::Poly1;
    std::string name_;
    std::vector<Poly2> polys_;
    std::vector<std::string> sources_;
    std::vector<ScalarExpr> exprs_;
    std::vector<std::pair<double, double>> domain_;
    std::vector<Override> overrides_;
};

struct NormalityCertificate {
    enum class Kind { Exact, Sampled };
    Kind kind = Kind::Exact;
    double max_residual = 0.0;
};

/// Throws NotNormal with a witness coefficient (polynomial kinds) or point.
NormalityCertificate normality_check(const MatrixFamily& F);

/// Characteristic polynomial of a Poly1 family with series coefficients.
MonicSeries char_poly_series(const MatrixFamily& F, std::size_t T);

/// One-parameter matrix curve with value and derivative.
struct Curve {
    int n = 0;
    std::function<Mat(double)> value;
    std::function<Mat(double)> deriv;
    /// Entries are polynomials in the curve parameter.
    bool polynomial = false;
};

/// Curve of a one-parameter family, or of a two-parameter family along p0 + t·dir.
/// `fd_scale` is passed to the Expr1 difference quotient; use the interval
/// length when working on intervals much shorter than 1.
Curve make_curve(const MatrixFamily& F, double fd_scale = 1.0);
Curve make_line_curve(const MatrixFamily& F, double x0, double y0, double dx, double dy);

/// Random unitary (QR of a complex Gaussian matrix) from a seeded engine.
template <class Rng>
Mat random_unitary(int n, Rng& rng);

}  // namespace normspec

#include "normspec/family_impl.hpp"
