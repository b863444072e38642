#pragma once

#include <Eigen/Dense>
#include <vector>

#include "normspec/series.hpp"

namespace normspec {

/// sigma[j] is the index in `next` assigned to prev[j].
struct Assignment {
    std::vector<int> sigma;
    double cost = 0.0;
};

/// Minimizes max_j cost(j, sigma(j)); among minimizers, minimizes the sum of
/// squared costs; remaining ties are broken lexicographically on sigma.
Assignment bottleneck_assign(const Eigen::MatrixXd& cost);

/// bottleneck_assign on the distance matrix |prev_j − next_k|.
Assignment bottleneck_match(const std::vector<Complex>& prev, const std::vector<Complex>& next);

/// Minimum-sum assignment restricted to allowed edges; returns false if no
/// perfect matching uses only allowed edges.
bool min_sum_assign(const Eigen::MatrixXd& weight, const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& allowed,
                    std::vector<int>& sigma, double& total);

}  // namespace normspec
