#include "stiefelclust/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "stiefelclust/rng.hpp"

namespace stiefelclust {

namespace {

// Greedy column matching of `sample` onto `reference` by absolute inner
// product, with signs fixed so matched inner products are nonnegative.
Eigen::MatrixXd align_columns(const Eigen::MatrixXd& reference, const Eigen::MatrixXd& sample) {
  const Eigen::Index r = reference.cols();
  const Eigen::MatrixXd corr = reference.transpose() * sample;  // (ref col i) . (sample col j)
  std::vector<bool> ref_used(static_cast<std::size_t>(r), false);
  std::vector<bool> sample_used(static_cast<std::size_t>(r), false);
  Eigen::MatrixXd aligned(sample.rows(), r);
  for (Eigen::Index pick = 0; pick < r; ++pick) {
    Eigen::Index best_i = -1, best_j = -1;
    double best = -1.0;
    for (Eigen::Index i = 0; i < r; ++i) {
      if (ref_used[static_cast<std::size_t>(i)]) continue;
      for (Eigen::Index j = 0; j < r; ++j) {
        if (sample_used[static_cast<std::size_t>(j)]) continue;
        if (std::abs(corr(i, j)) > best) {
          best = std::abs(corr(i, j));
          best_i = i;
          best_j = j;
        }
      }
    }
    ref_used[static_cast<std::size_t>(best_i)] = true;
    sample_used[static_cast<std::size_t>(best_j)] = true;
    const double sign = corr(best_i, best_j) < 0.0 ? -1.0 : 1.0;
    aligned.col(best_i) = sign * sample.col(best_j);
  }
  return aligned;
}

// Lloyd k-means on rows with 20 seeded restarts; returns 1-based labels.
std::vector<int> kmeans_rows(const Eigen::MatrixXd& points, int k, std::uint64_t seed) {
  const Eigen::Index n = points.rows();
  const int restarts = 20;
  const int max_iters = 100;
  std::vector<int> best_labels(static_cast<std::size_t>(n), 1);
  double best_cost = std::numeric_limits<double>::infinity();

  Rng rng(seed);
  for (int restart = 0; restart < restarts; ++restart) {
    // Initial centers: k distinct rows chosen at random.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    Eigen::MatrixXd centers(k, points.cols());
    for (int c = 0; c < k; ++c) centers.row(c) = points.row(order[static_cast<std::size_t>(c)]);

    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    for (int it = 0; it < max_iters; ++it) {
      bool changed = false;
      for (Eigen::Index i = 0; i < n; ++i) {
        int arg = 0;
        double best_d = (points.row(i) - centers.row(0)).squaredNorm();
        for (int c = 1; c < k; ++c) {
          const double d = (points.row(i) - centers.row(c)).squaredNorm();
          if (d < best_d) {
            best_d = d;
            arg = c;
          }
        }
        if (labels[static_cast<std::size_t>(i)] != arg) {
          labels[static_cast<std::size_t>(i)] = arg;
          changed = true;
        }
      }
      // Recompute centers; re-seed empty ones from the farthest point.
      Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
      std::vector<int> counts(static_cast<std::size_t>(k), 0);
      for (Eigen::Index i = 0; i < n; ++i) {
        sums.row(labels[static_cast<std::size_t>(i)]) += points.row(i);
        counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])]++;
      }
      for (int c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0) {
          centers.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
        } else {
          centers.row(c) = points.row(order[static_cast<std::size_t>(
              (restart + c) % static_cast<int>(n))]);
          changed = true;
        }
      }
      if (!changed) break;
    }
    double cost = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      cost += (points.row(i) - centers.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_labels.assign(labels.begin(), labels.end());
      for (auto& l : best_labels) l += 1;
    }
  }
  return best_labels;
}

}  // namespace

PosteriorEstimate posterior_mean(const ChainTrace& trace, bool align) {
  if (trace.states.empty()) throw EmptyTrace("trace holds no stored states");
  Eigen::MatrixXd sum = trace.states.front().U;
  long count = 1;
  for (std::size_t s = 1; s < trace.states.size(); ++s) {
    const Eigen::MatrixXd& u = trace.states[s].U;
    const Eigen::MatrixXd running_mean = sum / static_cast<double>(count);
    sum += align ? align_columns(running_mean, u) : u;
    ++count;
  }
  PosteriorEstimate est;
  est.U_hat = sum / static_cast<double>(count);
  est.T_hat = est.U_hat * est.U_hat.transpose();
  est.n_samples_used = count;
  return est;
}

Labeling extract_labels(const PosteriorEstimate& estimate, int K, std::uint64_t kmeans_seed) {
  const Eigen::Index n = estimate.U_hat.rows();
  if (K < 1 || K > estimate.U_hat.cols()) {
    throw DimensionMismatch("extract_labels requires 1 <= K <= R");
  }
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    int arg = 0;
    double best = std::abs(estimate.U_hat(i, 0));
    for (int r = 1; r < K; ++r) {
      const double v = std::abs(estimate.U_hat(i, r));
      if (v > best) {  // strict: ties stay with the smallest index
        best = v;
        arg = r;
      }
    }
    labels[static_cast<std::size_t>(i)] = arg + 1;
  }
  std::vector<int> counts(static_cast<std::size_t>(K), 0);
  for (int l : labels) counts[static_cast<std::size_t>(l - 1)]++;
  const bool has_empty = std::any_of(counts.begin(), counts.end(), [](int c) { return c == 0; });
  if (has_empty) {
    labels = kmeans_rows(estimate.U_hat, K, kmeans_seed);
  }
  return Labeling::from_labels(std::move(labels), K);
}

}  // namespace stiefelclust
