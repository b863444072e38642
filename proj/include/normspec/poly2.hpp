#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "normspec/series.hpp"

namespace normspec {

/// Exponent pair (a, b) of the monomial x^a y^b.
using Exponent = std::array<int, 2>;

/// Sparse polynomial in two real parameters (x, y) with complex coefficients.
/// One-parameter families use the same type with every b == 0 and t == x.
class Poly2 {
public:
    using Terms = std::map<Exponent, Complex>;

    Poly2() = default;
    explicit Poly2(Complex c);
    static Poly2 monomial(Complex c, int a, int b);
    static Poly2 x() { return monomial(1.0, 1, 0); }
    static Poly2 y() { return monomial(1.0, 0, 1); }
    /// Univariate polynomial in x from coefficients of x^0, x^1, ...
    static Poly2 from_univariate(const std::vector<Complex>& coeffs);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Complex coeff(int a, int b) const;
    Complex constant_term() const { return coeff(0, 0); }
    void set(int a, int b, Complex c);

    Poly2 operator-() const;
    Poly2& operator+=(const Poly2& o);
    Poly2& operator-=(const Poly2& o);
    Poly2& operator*=(Complex c);
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(Poly2 a, Complex c) { return a *= c; }
    friend Poly2 operator*(Complex c, Poly2 a) { return a *= c; }
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

    /// Conjugates coefficients only; parameters are real.
    Poly2 conj() const;
    /// Partial derivative in variable 0 (x) or 1 (y).
    Poly2 derivative(int var) const;
    /// Directional derivative dir[0] d/dx + dir[1] d/dy.
    Poly2 directional_derivative(double dx, double dy) const;
    /// Divides by x^a y^b; throws InvalidArgument if some term is not divisible.
    Poly2 divide_monomial(const Exponent& e) const;
    Poly2 multiply_monomial(const Exponent& e) const;
    /// Componentwise minimum exponent over all terms; requires !is_zero().
    Exponent min_exponent() const;
    int total_degree() const;
    int degree_in(int var) const;
    bool is_univariate() const;
    double max_abs_coeff() const;
    /// Drops coefficients with modulus <= tol.
    Poly2 pruned(double tol) const;

    Complex eval(Complex x, Complex y = Complex{}) const;
    /// Coefficients of x^k (requires is_univariate()) as a series truncated at trunc.
    /// `lost_tail` is set when terms of degree >= trunc were discarded.
    Series to_series(std::size_t trunc, bool* lost_tail = nullptr) const;

    /// Point blow-up of the origin: chart 1 is (x,y) -> (x, xy), chart 2 is (x,y) -> (xy, y).
    Poly2 substitute_chart(int chart) const;
    /// Substitute x -> x + s (univariate shift of the parameter).
    Poly2 shift_univariate(double s) const;

    std::string to_string() const;

private:
    Terms terms_;
};

}  // namespace normspec
