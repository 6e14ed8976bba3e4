#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "stiefelclust/cluster_model.hpp"
#include "stiefelclust/langevin_sampler.hpp"

namespace stiefelclust {

struct PosteriorEstimate {
  Eigen::MatrixXd U_hat;  // n x R
  Eigen::MatrixXd T_hat;  // n x n, U_hat U_hat^t
  long n_samples_used = 0;
};

/// Average of the stored U samples. The posterior is invariant under joint
/// column permutations and sign flips, so each sample is first aligned to the
/// running mean (greedy column matching on absolute inner products, sign
/// chosen to make the matched inner product nonnegative). `align = false`
/// averages raw samples, which cancels mass across symmetric modes; it exists
/// to document why alignment matters.
PosteriorEstimate posterior_mean(const ChainTrace& trace, bool align = true);

/// Hard clustering: label(i) = argmax_{r < K} |U_hat(i, r)|, ties to the
/// smallest r. If that leaves an empty cluster, falls back to seeded k-means
/// (20 restarts) on the rows of U_hat.
Labeling extract_labels(const PosteriorEstimate& estimate, int K,
                        std::uint64_t kmeans_seed = 0x9e3779b97f4a7c15ULL);

}  // namespace stiefelclust
