#include "normspec/poly2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "normspec/errors.hpp"

namespace normspec {

Poly2::Poly2(Complex c) {
    if (c != Complex{}) terms_[{0, 0}] = c;
}

Poly2 Poly2::monomial(Complex c, int a, int b) {
    Poly2 p;
    p.set(a, b, c);
    return p;
}

Poly2 Poly2::from_univariate(const std::vector<Complex>& coeffs) {
    Poly2 p;
    for (std::size_t k = 0; k < coeffs.size(); ++k) p.set(static_cast<int>(k), 0, coeffs[k]);
    return p;
}

Complex Poly2::coeff(int a, int b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? Complex{} : it->second;
}

void Poly2::set(int a, int b, Complex c) {
    if (a < 0 || b < 0) throw InvalidArgument("Poly2: negative exponent");
    if (c == Complex{})
        terms_.erase({a, b});
    else
        terms_[{a, b}] = c;
}

Poly2 Poly2::operator-() const {
    Poly2 r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly2& Poly2::operator+=(const Poly2& o) {
    for (const auto& [e, c] : o.terms_) set(e[0], e[1], coeff(e[0], e[1]) + c);
    return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
    for (const auto& [e, c] : o.terms_) set(e[0], e[1], coeff(e[0], e[1]) - c);
    return *this;
}

Poly2& Poly2::operator*=(Complex c) {
    if (c == Complex{}) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2::Terms acc;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) acc[{ea[0] + eb[0], ea[1] + eb[1]}] += ca * cb;
    Poly2 r;
    for (const auto& [e, c] : acc)
        if (c != Complex{}) r.terms_.emplace(e, c);
    return r;
}

Poly2 Poly2::conj() const {
    Poly2 r = *this;
    for (auto& [e, c] : r.terms_) c = std::conj(c);
    return r;
}

Poly2 Poly2::derivative(int var) const {
    Poly2 r;
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent f = e;
        f[var] -= 1;
        r.set(f[0], f[1], r.coeff(f[0], f[1]) + c * static_cast<double>(e[var]));
    }
    return r;
}

Poly2 Poly2::directional_derivative(double dx, double dy) const {
    Poly2 r;
    if (dx != 0.0) r += derivative(0) * Complex(dx);
    if (dy != 0.0) r += derivative(1) * Complex(dy);
    return r;
}

Poly2 Poly2::divide_monomial(const Exponent& m) const {
    Poly2 r;
    for (const auto& [e, c] : terms_) {
        if (e[0] < m[0] || e[1] < m[1])
            throw InvalidArgument("Poly2::divide_monomial: not divisible by x^" + std::to_string(m[0]) +
                                  " y^" + std::to_string(m[1]));
        r.terms_.emplace(Exponent{e[0] - m[0], e[1] - m[1]}, c);
    }
    return r;
}

Poly2 Poly2::multiply_monomial(const Exponent& m) const {
    Poly2 r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(Exponent{e[0] + m[0], e[1] + m[1]}, c);
    return r;
}

Exponent Poly2::min_exponent() const {
    if (terms_.empty()) throw ZeroPolynomial("min_exponent of the zero polynomial");
    Exponent m{terms_.begin()->first};
    for (const auto& [e, c] : terms_) {
        m[0] = std::min(m[0], e[0]);
        m[1] = std::min(m[1], e[1]);
    }
    return m;
}

int Poly2::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1]);
    return d;
}

int Poly2::degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

bool Poly2::is_univariate() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first[1] == 0; });
}

double Poly2::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

Poly2 Poly2::pruned(double tol) const {
    Poly2 r;
    for (const auto& [e, c] : terms_)
        if (std::abs(c) > tol) r.terms_.emplace(e, c);
    return r;
}

Complex Poly2::eval(Complex x, Complex y) const {
    Complex acc{};
    for (const auto& [e, c] : terms_) {
        Complex m = c;
        if (e[0]) m *= std::pow(x, e[0]);
        if (e[1]) m *= std::pow(y, e[1]);
        acc += m;
    }
    return acc;
}

Series Poly2::to_series(std::size_t trunc, bool* lost_tail) const {
    if (!is_univariate()) throw InvalidArgument("Poly2::to_series: polynomial depends on y");
    Series s(trunc);
    bool lost = false;
    for (const auto& [e, c] : terms_) {
        if (static_cast<std::size_t>(e[0]) < trunc)
            s.at(e[0]) = c;
        else
            lost = true;
    }
    if (lost_tail) *lost_tail = lost;
    return s;
}

Poly2 Poly2::substitute_chart(int chart) const {
    if (chart != 1 && chart != 2) throw InvalidArgument("chart index must be 1 or 2");
    Poly2 r;
    for (const auto& [e, c] : terms_) {
        const Exponent f = chart == 1 ? Exponent{e[0] + e[1], e[1]} : Exponent{e[0], e[0] + e[1]};
        r.set(f[0], f[1], r.coeff(f[0], f[1]) + c);
    }
    return r;
}

Poly2 Poly2::shift_univariate(double s) const {
    if (!is_univariate()) throw InvalidArgument("Poly2::shift_univariate: polynomial depends on y");
    // (x + s)^k expanded by the binomial theorem.
    Poly2 r;
    for (const auto& [e, c] : terms_) {
        const int k = e[0];
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            r.set(j, 0, r.coeff(j, 0) + c * binom * std::pow(s, k - j));
            binom = binom * (k - j) / (j + 1);
        }
    }
    return r;
}

std::string Poly2::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
        if (e[0]) os << "*x^" << e[0];
        if (e[1]) os << "*y^" << e[1];
    }
    return os.str();
}

}  // namespace normspec
