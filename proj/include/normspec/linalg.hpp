#pragma once

#include <Eigen/Dense>
#include <vector>

#include "normspec/monic.hpp"

namespace normspec {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Eigenvalues and eigenvectors of a square matrix.
/// For normal input the vectors come from a Schur form and are orthonormal.
struct EigenDecomp {
    Vec values;
    Mat vectors;
    bool unitary = false;
};

/// ‖AA* − A*A‖_F.
double normality_residual(const Mat& A);
bool is_normal(const Mat& A, double rel_tol = 1e-10);
EigenDecomp eigen_decompose(const Mat& A);
std::vector<Complex> eigenvalues(const Mat& A);
/// Spectral norm.
double op_norm(const Mat& A);

/// Faddeev–LeVerrier recurrence over any commutative scalar ring S that
/// supports +, *, and division by a double. `A` is row-major n×n; `one` is
/// the unit of S. Returns a_1..a_n with det(zI − A) = z^n + Σ(−1)^j a_j z^(n−j).
template <class S>
std::vector<S> faddeev_leverrier(const std::vector<S>& A, int n, const S& one) {
    const S zero = one * Complex{};
    std::vector<S> M(static_cast<std::size_t>(n) * n, zero);
    std::vector<S> AM(M.size(), zero);
    std::vector<S> c(n + 1, zero);
    c[n] = one;
    for (int k = 1; k <= n; ++k) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                S acc = zero;
                if (k > 1)
                    for (int l = 0; l < n; ++l) acc = acc + A[i * n + l] * M[l * n + j];
                AM[i * n + j] = acc;
            }
        for (int i = 0; i < n; ++i) AM[i * n + i] = AM[i * n + i] + c[n - k + 1];
        M = AM;
        S tr = zero;
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) tr = tr + A[i * n + l] * M[l * n + i];
        c[n - k] = tr * Complex(-1.0 / k);
    }
    std::vector<S> a(n, zero);
    for (int j = 1; j <= n; ++j) a[j - 1] = (j % 2 ? c[n - j] * Complex(-1.0) : c[n - j]);
    return a;
}

MonicPoly char_poly(const Mat& A);

}  // namespace normspec
