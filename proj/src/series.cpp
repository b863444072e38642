#include "normspec/series.hpp"

#include <algorithm>
#include <cmath>

#include "normspec/errors.hpp"

namespace normspec {

Series Series::constant(Complex c, std::size_t trunc) {
    Series s(trunc);
    if (trunc > 0) s.coeffs_[0] = c;
    return s;
}

Series Series::monomial(Complex c, int power, std::size_t trunc) {
    Series s(trunc);
    if (power >= 0 && static_cast<std::size_t>(power) < trunc) s.coeffs_[power] = c;
    return s;
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Series& Series::operator+=(const Series& o) {
    const std::size_t t = std::min(trunc(), o.trunc());
    coeffs_.resize(t);
    for (std::size_t k = 0; k < t; ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

Series& Series::operator-=(const Series& o) {
    const std::size_t t = std::min(trunc(), o.trunc());
    coeffs_.resize(t);
    for (std::size_t k = 0; k < t; ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
}

Series& Series::operator*=(Complex c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
}

Series operator*(const Series& a, const Series& b) {
    const std::size_t t = std::min(a.trunc(), b.trunc());
    Series r(t);
    r.eps_order_ = a.eps_order_;
    for (std::size_t i = 0; i < t; ++i) {
        if (a.coeffs_[i] == Complex{}) continue;
        for (std::size_t j = 0; i + j < t; ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
}

Series Series::inverse() const {
    if (trunc() == 0) return *this;
    if (coeffs_[0] == Complex{}) throw InvalidArgument("Series::inverse: constant term is zero");
    Series r(trunc());
    r.eps_order_ = eps_order_;
    const Complex inv0 = Complex{1.0} / coeffs_[0];
    r.coeffs_[0] = inv0;
    for (std::size_t k = 1; k < trunc(); ++k) {
        Complex acc{};
        for (std::size_t j = 1; j <= k; ++j) acc += coeffs_[j] * r.coeffs_[k - j];
        r.coeffs_[k] = -acc * inv0;
    }
    return r;
}

Series Series::compose_power(int gamma) const {
    if (gamma < 1) throw InvalidArgument("Series::compose_power: gamma must be >= 1");
    if (trunc() == 0) return *this;
    // Coefficients up to gamma*(T-1) are determined; the next unknown index is gamma*T
    // but indices strictly between multiples of gamma are known zeros.
    const std::size_t t = static_cast<std::size_t>(gamma) * (trunc() - 1) + 1;
    Series r(t);
    r.eps_order_ = eps_order_;
    for (std::size_t k = 0; k < trunc(); ++k) r.coeffs_[k * gamma] = coeffs_[k];
    return r;
}

Series Series::shift_down(int k) const {
    if (k <= 0) return k == 0 ? *this : shift_up(-k);
    const std::size_t uk = static_cast<std::size_t>(k);
    if (uk >= trunc()) {
        Series r(0);
        r.eps_order_ = eps_order_;
        return r;
    }
    Series r(std::vector<Complex>(coeffs_.begin() + k, coeffs_.end()), eps_order_);
    return r;
}

Series Series::shift_up(int k) const {
    if (k <= 0) return k == 0 ? *this : shift_down(-k);
    std::vector<Complex> c(static_cast<std::size_t>(k), Complex{});
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return Series(std::move(c), eps_order_);
}

Series Series::truncated(std::size_t t) const {
    if (t >= trunc()) return *this;
    return Series(std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + t), eps_order_);
}

Series Series::extended(std::size_t t) const {
    if (t <= trunc()) return *this;
    Series r = *this;
    r.coeffs_.resize(t, Complex{});
    return r;
}

Series Series::conj() const {
    Series r = *this;
    for (auto& c : r.coeffs_) c = std::conj(c);
    return r;
}

Series Series::derivative() const {
    if (trunc() <= 1) return Series(std::vector<Complex>{}, eps_order_);
    std::vector<Complex> c(trunc() - 1);
    for (std::size_t k = 1; k < trunc(); ++k) c[k - 1] = coeffs_[k] * static_cast<double>(k);
    return Series(std::move(c), eps_order_);
}

double Series::max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

int Series::order_abs(double threshold) const {
    for (std::size_t k = 0; k < trunc(); ++k)
        if (std::abs(coeffs_[k]) > threshold) return static_cast<int>(k);
    return kInfiniteOrder;
}

Complex Series::eval(Complex t) const {
    Complex acc{};
    for (std::size_t k = trunc(); k-- > 0;) acc = acc * t + coeffs_[k];
    return acc;
}

}  // namespace normspec
