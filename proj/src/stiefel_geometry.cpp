#include "stiefelclust/stiefel_geometry.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

namespace stiefelclust {

namespace {

constexpr double kRankTol = 1e-12;

// Frame-completion seed; bumped on the (measure-zero) event that the
// completion block leaves the frame rank deficient.
constexpr std::uint64_t kFrameSeed = 0x51f3b1a2c5d7e9f0ULL;

// Thin QR with the diagonal of R forced positive. Assumes full column rank
// was already checked by the caller.
Eigen::MatrixXd sign_fixed_thin_q(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  const Eigen::Index r = a.cols();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, r);
  const Eigen::MatrixXd rfac = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < r; ++j) {
    if (rfac(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

// n x n orthogonal frame whose first R columns coincide with base (up to
// round-off): sign-fixed QR of [base | G] with a fixed-seed Gaussian block.
Eigen::MatrixXd complete_frame(const StiefelPoint& base) {
  const Eigen::Index n = base.n();
  const Eigen::Index r = base.rank();
  if (n == r) return base.matrix();
  for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
    Rng rng(kFrameSeed + attempt);
    Eigen::MatrixXd full(n, n);
    full.leftCols(r) = base.matrix();
    full.rightCols(n - r) = gaussian_matrix(n, n - r, rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(full);
    const Eigen::MatrixXd rfac = qr.matrixQR().triangularView<Eigen::Upper>();
    bool ok = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(rfac(j, j)) <= kRankTol) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Eigen::MatrixXd q = qr.householderQ();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (rfac(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return q;
  }
  throw RankDeficient("frame completion failed: completion block is rank deficient");
}

}  // namespace

StiefelPoint::StiefelPoint(Eigen::MatrixXd m) : m_(std::move(m)) {
  const Eigen::Index n = m_.rows();
  const Eigen::Index r = m_.cols();
  if (r < 1 || n < r) {
    throw DimensionMismatch("StiefelPoint requires n >= R >= 1, got " + std::to_string(n) +
                            "x" + std::to_string(r));
  }
  if (!m_.allFinite()) throw Error("StiefelPoint entries must be finite");
  const double resid = orthonormality_residual();
  if (resid > kOrthoTol) {
    throw Error("StiefelPoint columns not orthonormal: residual " + std::to_string(resid));
  }
}

double StiefelPoint::orthonormality_residual() const {
  const Eigen::Index r = m_.cols();
  return (m_.transpose() * m_ - Eigen::MatrixXd::Identity(r, r)).norm();
}

TangentVector::TangentVector(StiefelPoint base, Eigen::MatrixXd m)
    : base_(std::move(base)), m_(std::move(m)) {
  if (m_.rows() != base_.n() || m_.cols() != base_.rank()) {
    throw DimensionMismatch("tangent matrix shape does not match base");
  }
  const Eigen::MatrixXd btm = base_.matrix().transpose() * m_;
  const double skew_resid = (btm + btm.transpose()).norm();
  if (skew_resid > kSkewTol) {
    throw NotTangent("base^t D not skew-symmetric: residual " + std::to_string(skew_resid));
  }
}

StiefelPoint project_to_stiefel(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  const Eigen::Index r = a.cols();
  if (r < 1 || n < r) {
    throw DimensionMismatch("projection input must be n x R with n >= R >= 1");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> rank_qr(a);
  rank_qr.setThreshold(kRankTol);
  if (rank_qr.rank() < r) {
    throw RankDeficient("matrix has numerical rank " + std::to_string(rank_qr.rank()) +
                        " < " + std::to_string(r));
  }
  return StiefelPoint(sign_fixed_thin_q(a));
}

TangentVector tangent_project(const StiefelPoint& base, const Eigen::MatrixXd& a) {
  if (a.rows() != base.n() || a.cols() != base.rank()) {
    throw DimensionMismatch("tangent_project: shape mismatch");
  }
  const Eigen::MatrixXd bta = base.matrix().transpose() * a;
  const Eigen::MatrixXd sym = 0.5 * (bta + bta.transpose());
  return TangentVector(base, a - base.matrix() * sym);
}

double canonical_metric(const TangentVector& d1, const TangentVector& d2) {
  if (d1.base().matrix() != d2.base().matrix()) {
    throw BaseMismatch("canonical_metric: tangent vectors have different base points");
  }
  const Eigen::MatrixXd& o = d1.base().matrix();
  // trace(D1^t D2) - trace((O^t D1)^t (O^t D2)) / 2
  const double full = (d1.matrix().array() * d2.matrix().array()).sum();
  const Eigen::MatrixXd p1 = o.transpose() * d1.matrix();
  const Eigen::MatrixXd p2 = o.transpose() * d2.matrix();
  return full - 0.5 * (p1.array() * p2.array()).sum();
}

StiefelPoint exp_map(const TangentVector& step, double t) {
  const StiefelPoint& base = step.base();
  if (t == 0.0 || step.matrix().isZero(0.0)) return base;

  const Eigen::Index n = base.n();
  const Eigen::Index r = base.rank();
  const Eigen::MatrixXd frame = complete_frame(base);

  Eigen::MatrixXd skew = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd a = frame.leftCols(r).transpose() * step.matrix();
  skew.topLeftCorner(r, r) = 0.5 * (a - a.transpose());  // symmetrize round-off away
  if (n > r) {
    const Eigen::MatrixXd b = frame.rightCols(n - r).transpose() * step.matrix();
    skew.bottomLeftCorner(n - r, r) = b;
    skew.topRightCorner(r, n - r) = -b.transpose();
  }
  const Eigen::MatrixXd rotated = (t * skew).exp();
  return project_to_stiefel(frame * rotated.leftCols(r));
}

TangentVector riemannian_gradient(const StiefelPoint& base, const Eigen::MatrixXd& euclid_grad) {
  if (euclid_grad.rows() != base.n() || euclid_grad.cols() != base.rank()) {
    throw DimensionMismatch("riemannian_gradient: shape mismatch");
  }
  const Eigen::MatrixXd& o = base.matrix();
  const Eigen::MatrixXd g = euclid_grad - o * euclid_grad.transpose() * o;
  // Already tangent up to round-off; the projection restores the invariant.
  return tangent_project(base, g);
}

StiefelPoint sample_uniform(Eigen::Index n, Eigen::Index r, Rng& rng) {
  if (r < 1 || n < r) throw DimensionMismatch("sample_uniform requires 1 <= R <= n");
  // Gaussian matrices are full rank almost surely; the projection's rank
  // check covers the pathological draw.
  return project_to_stiefel(gaussian_matrix(n, r, rng));
}

Eigen::MatrixXd orthogonal_complement(const StiefelPoint& base) {
  return complete_frame(base).rightCols(base.n() - base.rank());
}

}  // namespace stiefelclust
