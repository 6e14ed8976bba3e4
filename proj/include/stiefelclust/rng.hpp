#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace stiefelclust {

using Rng = std::mt19937_64;

/// Matrix of independent standard normals, filled column by column.
inline Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      m(r, c) = normal(rng);
    }
  }
  return m;
}

inline Eigen::VectorXd gaussian_vector(Eigen::Index size, Rng& rng) {
  return gaussian_matrix(size, 1, rng);
}

}  // namespace stiefelclust
