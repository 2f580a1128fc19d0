#pragma once

#include <Eigen/Dense>

namespace spclust {

// Thin SVD of an N x K matrix: u is N x r and v is K x r with orthonormal
// columns, sigma holds the r = min(N, K) singular values in nonincreasing
// order.
struct SvdFactors {
  Eigen::MatrixXd u;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd v;
};

SvdFactors thin_svd(const Eigen::MatrixXd& g);

// Sum of the p-th powers of the singular values of g; p must be positive.
double schatten_p_value(const Eigen::MatrixXd& g, double p);

/// Gradient of schatten_p_value: p * U * diag(g(sigma)) * V^T with
/// g(sigma) = sigma^(p-1).
///
/// Singular values at or below sigma_floor * sigma_max are treated as
/// exactly zero (pseudo-inverse convention), which keeps the factor
/// sigma^(p-1) bounded for p < 1. An all-zero matrix has a zero gradient.
Eigen::MatrixXd schatten_p_gradient(const Eigen::MatrixXd& g, double p,
                                    double sigma_floor = 1e-10);

// tr(F^T G); shapes must match.
double linearized_bonus(const Eigen::MatrixXd& f, const Eigen::MatrixXd& g);

}  // namespace spclust
