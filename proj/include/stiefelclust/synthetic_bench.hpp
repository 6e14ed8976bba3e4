#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "stiefelclust/cluster_model.hpp"
#include "stiefelclust/rng.hpp"

namespace stiefelclust {

/// Gaussian mixture with unit-norm means at exact pairwise coherence.
struct MixtureSpec {
  int n = 0;
  int d = 0;
  int K = 0;
  std::vector<int> cluster_sizes;  // empty means as-equal-as-possible split
  double coherence = 0.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;

  std::vector<int> resolved_sizes() const;
  void validate() const;
};

/// Mean matrix d x K with unit-norm columns and all pairwise inner products
/// exactly equal to the coherence: a Cholesky factor of the target Gram
/// matrix embedded through a random orthonormal frame.
Eigen::MatrixXd make_incoherent_means(const MixtureSpec& spec, Rng& rng);

struct SyntheticDataset {
  DataMatrix data;
  Eigen::MatrixXd means;  // d x K
};

/// Points assigned cluster-wise in order; column i of M is the mean of point
/// i's cluster; E iid Normal(0, sigma^2); X = M + E with ground truth stored.
SyntheticDataset generate_full(const MixtureSpec& spec);
DataMatrix generate(const MixtureSpec& spec);

/// Plug-in estimates of min and max of ||E (I - U~ U~^t)||_F over feasible
/// U~ (nonnegative Stiefel, M U~ U~^t = M). Candidates are U* plus
/// n_candidates random nonnegative per-cluster block replacements; every
/// candidate is feasibility-checked to 1e-8 before use and dropped otherwise.
/// The results are one-sided: an upper bound on the true min and a lower
/// bound on the true max.
std::pair<double, double> estimate_nu(const DataMatrix& data, int n_candidates, Rng& rng);

}  // namespace stiefelclust
