#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "stiefelclust/errors.hpp"
#include "stiefelclust/stiefel_geometry.hpp"

namespace stiefelclust {

/// Hard cluster assignment of n points into K nonempty clusters.
/// Labels are 1-based.
struct Labeling {
  std::vector<int> labels;
  int K = 0;
  std::vector<int> cluster_sizes;

  /// Builds (and validates) the labeling from raw labels; K defaults to the
  /// largest label present.
  static Labeling from_labels(std::vector<int> labels, int K = 0);

  int n() const { return static_cast<int>(labels.size()); }
};

/// Ground truth attached to synthetic data: X = M + E exactly.
struct GroundTruth {
  Eigen::MatrixXd M;
  Eigen::MatrixXd E;
  Labeling labels;
};

/// Observation matrix, d features x n points.
struct DataMatrix {
  Eigen::MatrixXd X;
  std::optional<GroundTruth> ground_truth;

  Eigen::Index d() const { return X.rows(); }
  Eigen::Index n() const { return X.cols(); }

  static DataMatrix from_matrix(Eigen::MatrixXd x);
  static DataMatrix with_truth(Eigen::MatrixXd m, Eigen::MatrixXd e, Labeling labels);
};

/// The ideal cluster matrices: T* averages within clusters, T* = U* U*^t with
/// U* the column-normalized cluster indicators.
struct IdealClusterMatrices {
  Eigen::MatrixXd T_star;  // n x n
  Eigen::MatrixXd U_star;  // n x K
};

IdealClusterMatrices build_ideal(const Labeling& labeling);

struct ModelParams {
  double lambda = 1.0;    // inverse temperature
  double mu_prior = 0.1;  // width of the U | O prior
  int R = 1;              // factor rank

  void validate() const;
};

/// Sampler state: unconstrained factor U and latent Stiefel point O.
struct LatentState {
  Eigen::MatrixXd U;
  StiefelPoint O;
};

/// Squared Frobenius residual ||X - X U U^t||_F^2.
double loss(const DataMatrix& data, const Eigen::MatrixXd& u);

/// Gradient of U -> ||X - X U U^t||_F^2, i.e.
/// -2 ((X - X U U^t)^t X + X^t (X - X U U^t)) U.
Eigen::MatrixXd loss_gradient_U(const DataMatrix& data, const Eigen::MatrixXd& u);

/// log pi(U | O) = -||U - |O|||_F^2 / (2 mu^2) - nR log(sqrt(2 pi) mu).
double log_prior_U_given_O(const Eigen::MatrixXd& u, const StiefelPoint& o, double mu_prior);

/// Unnormalized log posterior: -(lambda/2) loss + log prior. The uniform
/// prior on O contributes a constant and is omitted; the normalizing constant
/// is never computed.
double log_posterior_unnormalized(const DataMatrix& data, const LatentState& state,
                                  const ModelParams& params);

/// Euclidean partial of the log prior with respect to O:
/// sign(O) .* (U - |O|) / mu^2, with sign(0) = 0.
Eigen::MatrixXd grad_O_log_prior(const Eigen::MatrixXd& u, const StiefelPoint& o,
                                 double mu_prior);

}  // namespace stiefelclust
