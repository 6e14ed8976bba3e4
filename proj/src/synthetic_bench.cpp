#include "stiefelclust/synthetic_bench.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <string>

#include "stiefelclust/stiefel_geometry.hpp"

namespace stiefelclust {

std::vector<int> MixtureSpec::resolved_sizes() const {
  if (!cluster_sizes.empty()) return cluster_sizes;
  std::vector<int> sizes(static_cast<std::size_t>(K), n / K);
  for (int k = 0; k < n % K; ++k) sizes[static_cast<std::size_t>(k)]++;
  return sizes;
}

void MixtureSpec::validate() const {
  if (n < 1 || K < 1 || d < 1) throw Error("mixture spec needs positive n, d, K");
  if (d <= K) throw Error("mixture spec requires d > K");
  if (sigma < 0.0) throw Error("sigma must be nonnegative");
  if (coherence < 0.0 || (K > 1 && coherence * (K - 1) >= 1.0)) {
    throw InvalidCoherence("coherence must lie in [0, 1/(K-1))");
  }
  const auto sizes = resolved_sizes();
  if (static_cast<int>(sizes.size()) != K) throw InvalidLabeling("cluster_sizes length != K");
  int total = 0;
  for (int s : sizes) {
    if (s < 1) throw InvalidLabeling("every cluster must be nonempty");
    total += s;
  }
  if (total != n) throw InvalidLabeling("cluster sizes must sum to n");
}

Eigen::MatrixXd make_incoherent_means(const MixtureSpec& spec, Rng& rng) {
  spec.validate();
  const int k = spec.K;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Constant(k, k, spec.coherence);
  gram.diagonal().setOnes();
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw InvalidCoherence("coherence Gram matrix is not positive definite");
  }
  const Eigen::MatrixXd factor = llt.matrixU();  // factor^t factor = gram
  const StiefelPoint frame = sample_uniform(spec.d, k, rng);
  return frame.matrix() * factor;
}

SyntheticDataset generate_full(const MixtureSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const Eigen::MatrixXd means = make_incoherent_means(spec, rng);

  const auto sizes = spec.resolved_sizes();
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(spec.n));
  for (int k = 0; k < spec.K; ++k) {
    for (int i = 0; i < sizes[static_cast<std::size_t>(k)]; ++i) labels.push_back(k + 1);
  }
  Labeling labeling = Labeling::from_labels(std::move(labels), spec.K);

  Eigen::MatrixXd m(spec.d, spec.n);
  for (int i = 0; i < spec.n; ++i) {
    m.col(i) = means.col(labeling.labels[static_cast<std::size_t>(i)] - 1);
  }
  const Eigen::MatrixXd e = spec.sigma * gaussian_matrix(spec.d, spec.n, rng);

  SyntheticDataset out{DataMatrix::with_truth(std::move(m), e, std::move(labeling)), means};
  return out;
}

DataMatrix generate(const MixtureSpec& spec) { return generate_full(spec).data; }

namespace {

constexpr double kFeasibilityTol = 1e-8;

bool feasible(const Eigen::MatrixXd& m, const Eigen::MatrixXd& u_tilde) {
  if ((u_tilde.array() < 0.0).any()) return false;
  const Eigen::Index r = u_tilde.cols();
  if ((u_tilde.transpose() * u_tilde - Eigen::MatrixXd::Identity(r, r)).norm() > 1e-10) {
    return false;
  }
  return (m * u_tilde * u_tilde.transpose() - m).norm() <= kFeasibilityTol;
}

}  // namespace

std::pair<double, double> estimate_nu(const DataMatrix& data, int n_candidates, Rng& rng) {
  if (!data.ground_truth) throw NoGroundTruth("estimate_nu needs ground-truth E");
  const GroundTruth& truth = *data.ground_truth;
  const Labeling& labeling = truth.labels;
  const Eigen::MatrixXd u_star = build_ideal(labeling).U_star;
  const Eigen::Index n = u_star.rows();
  const int k = labeling.K;

  double nu_min = std::numeric_limits<double>::infinity();
  double nu_max = 0.0;
  const auto consider = [&](const Eigen::MatrixXd& u_tilde) {
    const double value =
        (truth.E - truth.E * u_tilde * u_tilde.transpose()).norm();
    nu_min = std::min(nu_min, value);
    nu_max = std::max(nu_max, value);
  };

  consider(u_star);  // always feasible by construction
  for (int c = 0; c < n_candidates; ++c) {
    Eigen::MatrixXd cand = Eigen::MatrixXd::Zero(n, k);
    for (int col = 0; col < k; ++col) {
      Eigen::VectorXd block =
          gaussian_vector(labeling.cluster_sizes[static_cast<std::size_t>(col)], rng)
              .cwiseAbs();
      block /= block.norm();
      Eigen::Index row = 0;
      Eigen::Index filled = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (labeling.labels[static_cast<std::size_t>(i)] == col + 1) {
          cand(i, col) = block(filled++);
        }
        ++row;
      }
    }
    // Feasibility asserted before use; infeasible draws are skipped.
    if (feasible(truth.M, cand)) consider(cand);
  }
  return {nu_min, nu_max};
}

}  // namespace stiefelclust
