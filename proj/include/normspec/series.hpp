#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

namespace normspec {

using Complex = std::complex<double>;

/// Order value standing for "all known coefficients vanish" (the order of 0).
inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

/// Truncated formal power series in one variable t.
///
/// Holds the coefficients of t^0 .. t^(T-1); everything from t^T on is
/// unknown. Arithmetic between series of different truncation yields the
/// smaller truncation, so results never claim more than was known.
class Series {
public:
    static constexpr double kDefaultEpsOrder = 1e-10;

    Series() = default;
    explicit Series(std::size_t trunc) : coeffs_(trunc, Complex{}) {}
    explicit Series(std::vector<Complex> coeffs, double eps_order = kDefaultEpsOrder)
        : coeffs_(std::move(coeffs)), eps_order_(eps_order) {}

    static Series constant(Complex c, std::size_t trunc);
    static Series monomial(Complex c, int power, std::size_t trunc);

    std::size_t trunc() const noexcept { return coeffs_.size(); }
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
    Complex operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }
    Complex& at(std::size_t k) { return coeffs_.at(k); }
    double eps_order() const noexcept { return eps_order_; }
    void set_eps_order(double eps) { eps_order_ = eps; }

    Series operator-() const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(Complex c);
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(Series a, Complex c) { return a *= c; }
    friend Series operator*(Complex c, Series a) { return a *= c; }
    friend Series operator/(Series a, Complex c) { return a *= (Complex{1.0} / c); }

    /// Multiplicative inverse; requires a nonzero constant term.
    Series inverse() const;
    /// f(t^gamma).
    Series compose_power(int gamma) const;
    /// f / t^k, discarding the first k coefficients (caller checks they vanish).
    Series shift_down(int k) const;
    /// f * t^k.
    Series shift_up(int k) const;
    Series truncated(std::size_t trunc) const;
    /// Zero-extends to a larger truncation. Only valid for series known to be
    /// polynomials of degree < trunc().
    Series extended(std::size_t trunc) const;
    Series conj() const;
    Series derivative() const;

    double max_abs() const;
    /// Least k with |c_k| > threshold, or kInfiniteOrder.
    int order_abs(double threshold) const;
    /// Order with threshold eps_order scaled by the largest coefficient.
    int order() const { return order_abs(eps_order_ * max_abs()); }

    Complex eval(Complex t) const;

private:
    std::vector<Complex> coeffs_;
    double eps_order_ = kDefaultEpsOrder;
};

/// ω(f) with the default relative threshold.
inline int series_order(const Series& f) { return f.order(); }

}  // namespace normspec
