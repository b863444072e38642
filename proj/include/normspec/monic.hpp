#pragma once

#include <vector>

#include "normspec/series.hpp"

namespace normspec {

/// Monic polynomial z^n + sum_j (-1)^j a_j z^(n-j); a[j-1] holds a_j.
struct MonicPoly {
    std::vector<Complex> a;

    int degree() const noexcept { return static_cast<int>(a.size()); }
    /// Ordinary coefficients c_0..c_n of sum c_k z^k (c_n = 1).
    std::vector<Complex> power_coeffs() const;
    Complex eval(Complex z) const;
    /// sum |c_k| |z|^k, the natural scale of |P(z)| in floating point.
    double eval_scale(Complex z) const;
    double max_abs_coeff() const;
};

/// Monic polynomial with truncated power series coefficients in t.
struct MonicSeries {
    std::vector<Series> a;

    int degree() const noexcept { return static_cast<int>(a.size()); }
    std::size_t trunc() const;
    /// Coefficientwise value at t = 0.
    MonicPoly at_zero() const;
    /// Evaluation of every coefficient at a numeric t.
    MonicPoly specialize(Complex t) const;
};

struct RootOptions {
    int max_iters = 200;
    double root_tol = 1e-12;
};

/// Elementary symmetric functions a_1..a_n of the given roots.
MonicPoly from_roots(const std::vector<Complex>& roots);
MonicSeries from_series_roots(const std::vector<Series>& roots);

/// All n roots (with multiplicity) by simultaneous Aberth iteration.
/// Throws NoConvergence when some root fails the residual test.
std::vector<Complex> poly_roots(const MonicPoly& p, const RootOptions& opt = {});

/// Sum over k-subsets of the product of squared pairwise differences.
Complex delta_k(const std::vector<Complex>& roots, int k);

/// Largest k with |delta_k| > tol, at least 1.
int distinct_count(const std::vector<Complex>& roots, double tol);

/// Single-linkage clusters at distance tol, each listed by ascending index;
/// clusters are ordered by their smallest index.
std::vector<std::vector<int>> cluster_roots(const std::vector<Complex>& roots, double tol);

}  // namespace normspec
