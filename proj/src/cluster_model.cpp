#include "stiefelclust/cluster_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stiefelclust {

Labeling Labeling::from_labels(std::vector<int> labels, int K) {
  if (labels.empty()) throw InvalidLabeling("empty labeling");
  const int max_label = *std::max_element(labels.begin(), labels.end());
  const int min_label = *std::min_element(labels.begin(), labels.end());
  if (min_label < 1) throw InvalidLabeling("labels must be >= 1");
  if (K == 0) K = max_label;
  if (max_label > K) throw InvalidLabeling("label exceeds K");
  std::vector<int> sizes(static_cast<std::size_t>(K), 0);
  for (int l : labels) sizes[static_cast<std::size_t>(l - 1)]++;
  for (int k = 0; k < K; ++k) {
    if (sizes[static_cast<std::size_t>(k)] == 0) {
      throw InvalidLabeling("cluster " + std::to_string(k + 1) + " is empty");
    }
  }
  Labeling out;
  out.labels = std::move(labels);
  out.K = K;
  out.cluster_sizes = std::move(sizes);
  return out;
}

DataMatrix DataMatrix::from_matrix(Eigen::MatrixXd x) {
  if (!x.allFinite()) throw Error("data matrix entries must be finite");
  DataMatrix d;
  d.X = std::move(x);
  return d;
}

DataMatrix DataMatrix::with_truth(Eigen::MatrixXd m, Eigen::MatrixXd e, Labeling labels) {
  if (m.rows() != e.rows() || m.cols() != e.cols()) {
    throw DimensionMismatch("M and E shapes differ");
  }
  if (m.cols() != static_cast<Eigen::Index>(labels.labels.size())) {
    throw DimensionMismatch("labels length does not match number of points");
  }
  DataMatrix d;
  d.X = m + e;  // X = M + E exactly, by construction
  if (!d.X.allFinite()) throw Error("data matrix entries must be finite");
  d.ground_truth = GroundTruth{std::move(m), std::move(e), std::move(labels)};
  return d;
}

IdealClusterMatrices build_ideal(const Labeling& labeling) {
  const int n = labeling.n();
  const int k = labeling.K;
  Eigen::MatrixXd u_star = Eigen::MatrixXd::Zero(n, k);
  for (int i = 0; i < n; ++i) {
    const int c = labeling.labels[static_cast<std::size_t>(i)] - 1;
    u_star(i, c) = 1.0 / std::sqrt(static_cast<double>(
                              labeling.cluster_sizes[static_cast<std::size_t>(c)]));
  }
  IdealClusterMatrices out;
  out.U_star = u_star;
  out.T_star = u_star * u_star.transpose();
  return out;
}

void ModelParams::validate() const {
  if (!(lambda > 0.0)) throw Error("lambda must be positive");
  if (!(mu_prior > 0.0)) throw Error("mu_prior must be positive");
  if (R < 1) throw Error("rank must be >= 1");
}

namespace {

void check_shapes(const DataMatrix& data, const Eigen::MatrixXd& u) {
  if (u.rows() != data.n()) {
    throw DimensionMismatch("U must have one row per data point");
  }
}

}  // namespace

double loss(const DataMatrix& data, const Eigen::MatrixXd& u) {
  check_shapes(data, u);
  const Eigen::MatrixXd xu = data.X * u;
  return (data.X - xu * u.transpose()).squaredNorm();
}

Eigen::MatrixXd loss_gradient_U(const DataMatrix& data, const Eigen::MatrixXd& u) {
  check_shapes(data, u);
  const Eigen::MatrixXd resid = data.X - (data.X * u) * u.transpose();
  return -2.0 * (resid.transpose() * (data.X * u) + data.X.transpose() * (resid * u));
}

double log_prior_U_given_O(const Eigen::MatrixXd& u, const StiefelPoint& o, double mu_prior) {
  if (u.rows() != o.n() || u.cols() != o.rank()) {
    throw DimensionMismatch("log_prior_U_given_O: shape mismatch");
  }
  const double nr = static_cast<double>(u.size());
  const double sq = (u - o.matrix().cwiseAbs()).squaredNorm();
  return -sq / (2.0 * mu_prior * mu_prior) -
         nr * std::log(std::sqrt(2.0 * M_PI) * mu_prior);
}

double log_posterior_unnormalized(const DataMatrix& data, const LatentState& state,
                                  const ModelParams& params) {
  return -0.5 * params.lambda * loss(data, state.U) +
         log_prior_U_given_O(state.U, state.O, params.mu_prior);
}

Eigen::MatrixXd grad_O_log_prior(const Eigen::MatrixXd& u, const StiefelPoint& o,
                                 double mu_prior) {
  if (u.rows() != o.n() || u.cols() != o.rank()) {
    throw DimensionMismatch("grad_O_log_prior: shape mismatch");
  }
  const Eigen::ArrayXXd sign = o.matrix().array().sign();  // sign(0) = 0
  const Eigen::ArrayXXd diff = u.array() - o.matrix().array().abs();
  return (sign * diff / (mu_prior * mu_prior)).matrix();
}

}  // namespace stiefelclust
