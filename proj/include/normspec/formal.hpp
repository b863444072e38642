#pragma once

#include <cstddef>
#include <vector>

#include "normspec/errors.hpp"
#include "normspec/family.hpp"
#include "normspec/monic.hpp"
#include "normspec/series.hpp"

namespace normspec {

// Inputs of type MonicSeries are read as polynomials in t: coefficients past
// the stored truncation are taken to be zero, except that a coefficient whose
// last stored entry is nonzero has an unknown tail.

/// Eigenvalue branch; the value at t is series evaluated at s = t^(1/gamma).
struct SeriesBranch {
    Series series;
    int gamma = 1;
    int multiplicity = 1;
};

struct NonflatReport {
    int k_max = 1;
    int order = 0;
    bool flat = false;
};

class TruncationInconclusive : public Error {
public:
    TruncationInconclusive(NonflatReport r, const std::string& what)
        : Error("TruncationInconclusive", what), report_(r) {}
    const NonflatReport& report() const noexcept { return report_; }

private:
    NonflatReport report_;
};

/// Power sums p_0..p_count of the roots by Newton's identities.
std::vector<Series> power_sums(const MonicSeries& P, int count);

/// Δ̃_k as the determinant of the k×k Hankel matrix of power sums.
Series delta_series(const MonicSeries& P, int k);

/// Throws TruncationInconclusive when a vanishing Δ̃_k above k_max cannot be
/// told apart from one of order ≥ T.
NonflatReport nonflat_check(const MonicSeries& P, std::size_t T);

struct MultOrderResult {
    bool condA = false;
    bool condB = false;
    bool agree = false;
};

/// condA: ω(a_j) ≥ j·r for all j; condB: ω(Δ̃_j) ≥ j(j-1)·r for all j.
/// Requires a_1 = 0.
MultOrderResult mult_order_check(const MonicSeries& P, int r);

/// Hensel lift of the root-cluster factorization of P(0), one monic factor
/// per cluster, to order T.
std::vector<MonicSeries> split_series(const MonicSeries& P, std::size_t T);

struct Expansion {
    int gamma = 1;
    std::vector<SeriesBranch> branches;
    /// Max coefficient error of prod (z - branch) against P(s^gamma) below T.
    double residual = 0.0;
    /// Internal truncation that reached T.
    std::size_t internal_truncation = 0;
};

struct ExpandOptions {
    std::size_t truncation = 24;
    std::size_t extra = 8;
    std::size_t max_internal = 1024;
};

/// Branches of a monic polynomial whose contact orders are integral.
Expansion branch_expand(const MonicSeries& P, const ExpandOptions& opt = {});
/// Branches of the characteristic polynomial of an exactly normal Poly1 family.
Expansion branch_expand(const MatrixFamily& F, const ExpandOptions& opt = {});

/// Branches in s with t = s^gamma, gamma the least common multiple of the
/// slope denominators met during the recursion.
Expansion puiseux_expand(const MonicSeries& P, const ExpandOptions& opt = {});

/// Every branch (repeated by multiplicity) evaluated at t ≥ 0, using the
/// principal root for s.
std::vector<Complex> evaluate_branches(const Expansion& e, double t);

/// Total number of branches counted with multiplicity.
int branch_count(const Expansion& e);

}  // namespace normspec
