#include "spclust/schatten.hpp"

#include <cmath>
#include <stdexcept>

namespace spclust {

namespace {

void check_inputs(const Eigen::MatrixXd& g, double p) {
  if (g.rows() < 1 || g.cols() < 1) {
    throw std::invalid_argument("matrix must be nonempty");
  }
  if (!g.allFinite()) {
    throw std::invalid_argument("matrix has non-finite entries");
  }
  if (!(p > 0.0)) {
    throw std::invalid_argument("p must be > 0");
  }
}

}  // namespace

SvdFactors thin_svd(const Eigen::MatrixXd& g) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

double schatten_p_value(const Eigen::MatrixXd& g, double p) {
  check_inputs(g, p);
  Eigen::VectorXd sigma = thin_svd(g).sigma;
  double total = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > 0.0) total += std::pow(sigma(i), p);
  }
  return total;
}

Eigen::MatrixXd schatten_p_gradient(const Eigen::MatrixXd& g, double p,
                                    double sigma_floor) {
  check_inputs(g, p);
  if (sigma_floor < 0.0) {
    throw std::invalid_argument("sigma_floor must be >= 0");
  }
  SvdFactors f = thin_svd(g);
  double threshold = sigma_floor * (f.sigma.size() > 0 ? f.sigma(0) : 0.0);
  Eigen::VectorXd scaled(f.sigma.size());
  for (Eigen::Index i = 0; i < f.sigma.size(); ++i) {
    scaled(i) = f.sigma(i) > threshold ? std::pow(f.sigma(i), p - 1.0) : 0.0;
  }
  return p * f.u * scaled.asDiagonal() * f.v.transpose();
}

double linearized_bonus(const Eigen::MatrixXd& f, const Eigen::MatrixXd& g) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) {
    throw std::invalid_argument("shape mismatch between gradient and matrix");
  }
  return (f.array() * g.array()).sum();
}

}  // namespace spclust
