#pragma once

#include <Eigen/Dense>

#include "stiefelclust/errors.hpp"
#include "stiefelclust/rng.hpp"

namespace stiefelclust {

/// A point on the Stiefel manifold: an n x R matrix with orthonormal columns.
///
/// The orthonormality residual ||O^t O - I_R||_F must stay below 1e-10; the
/// constructor enforces this, so a StiefelPoint is valid by construction.
class StiefelPoint {
public:
  static constexpr double kOrthoTol = 1e-10;

  explicit StiefelPoint(Eigen::MatrixXd m);

  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::Index n() const { return m_.rows(); }
  Eigen::Index rank() const { return m_.cols(); }

  /// ||O^t O - I_R||_F
  double orthonormality_residual() const;

private:
  Eigen::MatrixXd m_;
};

/// Tangent vector at a StiefelPoint. The canonical tangent condition is that
/// base^t * matrix is skew-symmetric (to 1e-10).
class TangentVector {
public:
  static constexpr double kSkewTol = 1e-10;

  TangentVector(StiefelPoint base, Eigen::MatrixXd m);

  const StiefelPoint& base() const { return base_; }
  const Eigen::MatrixXd& matrix() const { return m_; }

private:
  StiefelPoint base_;
  Eigen::MatrixXd m_;
};

/// Nearest-representative projection onto the manifold: the Q factor of a thin
/// QR decomposition with the diagonal of the triangular factor forced
/// positive, so the representative is unique and reproducible.
/// Throws RankDeficient when the numerical rank of A is below R (tol 1e-12).
StiefelPoint project_to_stiefel(const Eigen::MatrixXd& a);

/// Orthogonal projection of an ambient matrix onto the tangent space at base:
/// A - base * sym(base^t A).
TangentVector tangent_project(const StiefelPoint& base, const Eigen::MatrixXd& a);

/// Canonical metric g_c(D1, D2) = trace(D1^t (I - base base^t / 2) D2).
/// Both tangent vectors must share the same base (bitwise).
double canonical_metric(const TangentVector& d1, const TangentVector& d2);

/// Geodesic step of length t along the tangent direction `step` from its base.
///
/// Embeds the base as the first R columns of an n x n orthogonal frame
/// (completed by sign-fixed QR of [base | G] with a fixed-seed Gaussian block
/// G), forms the n x n skew matrix [[A, -B^t], [B, 0]] from the direction's
/// frame coordinates, multiplies by its matrix exponential and re-projects.
/// exp_map(step, 0) returns the base exactly.
StiefelPoint exp_map(const TangentVector& step, double t);

/// Riemannian gradient under the canonical metric: f_O - base f_O^t base,
/// tangent-projected to enforce the tangent invariant against round-off.
TangentVector riemannian_gradient(const StiefelPoint& base, const Eigen::MatrixXd& euclid_grad);

/// Haar-uniform draw: sign-fixed QR of an n x R standard Gaussian matrix.
StiefelPoint sample_uniform(Eigen::Index n, Eigen::Index r, Rng& rng);

/// Deterministic orthonormal basis of the orthogonal complement of base's
/// column span (n x (n-R)). Same frame construction as exp_map.
Eigen::MatrixXd orthogonal_complement(const StiefelPoint& base);

}  // namespace stiefelclust
