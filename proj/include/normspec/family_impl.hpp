#pragma once

#include <random>

namespace normspec {

template <class Rng>
Mat random_unitary(int n, Rng& rng) {
    std::normal_distribution<double> g;
    Mat Z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Z(i, j) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<Mat> qr(Z);
    Mat Q = qr.householderQ();
    const Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const Complex d = R(j, j);
        if (std::abs(d) > 0) Q.col(j) *= d / std::abs(d);
    }
    return Q;
}

}  // namespace normspec
