#include "normspec/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace normspec {

double normality_residual(const Mat& A) {
    const Mat Ah = A.adjoint();
    return (A * Ah - Ah * A).norm();
}

bool is_normal(const Mat& A, double rel_tol) {
    const double s = A.norm();
    return normality_residual(A) <= rel_tol * (1.0 + s * s);
}

EigenDecomp eigen_decompose(const Mat& A) {
    EigenDecomp d;
    if (A.rows() == 0) return d;
    if (is_normal(A)) {
        Eigen::ComplexSchur<Mat> schur(A, true);
        d.values = schur.matrixT().diagonal();
        d.vectors = schur.matrixU();
        d.unitary = true;
        return d;
    }
    Eigen::ComplexEigenSolver<Mat> es(A, true);
    d.values = es.eigenvalues();
    d.vectors = es.eigenvectors();
    for (Eigen::Index j = 0; j < d.vectors.cols(); ++j) d.vectors.col(j).normalize();
    return d;
}

std::vector<Complex> eigenvalues(const Mat& A) {
    if (A.rows() == 0) return {};
    Eigen::ComplexSchur<Mat> schur(A, false);
    const Vec v = schur.matrixT().diagonal();
    return {v.data(), v.data() + v.size()};
}

double op_norm(const Mat& A) {
    if (A.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(A);
    return svd.singularValues()(0);
}

MonicPoly char_poly(const Mat& A) {
    const int n = static_cast<int>(A.rows());
    std::vector<Complex> flat(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) flat[i * n + j] = A(i, j);
    return MonicPoly{faddeev_leverrier<Complex>(flat, n, Complex{1.0})};
}

}  // namespace normspec
