#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "stiefelclust/cluster_model.hpp"
#include "stiefelclust/rng.hpp"

namespace stiefelclust {

enum class InitMode { kUniform, kSpectral };

struct SamplerConfig {
  ModelParams params;
  double h = 1e-4;           // step size
  long n_iters = 10000;
  long burn_in = -1;         // < 0 means n_iters / 2
  long thinning = 10;
  std::uint64_t seed = 0;
  long reproject_every = 1;
  InitMode init = InitMode::kUniform;

  long effective_burn_in() const { return burn_in < 0 ? n_iters / 2 : burn_in; }
  void validate() const;
};

/// Chain output. Traces have one entry per iteration; states are the thinned
/// post-burn-in samples. The sampler is unadjusted, so there is no acceptance
/// rate to report.
struct ChainTrace {
  std::vector<LatentState> states;
  std::vector<double> loss_trace;
  std::vector<double> log_post_trace;
  std::string acceptance_note = "unadjusted - no rejection step";
  bool diverged = false;
  long diverged_at = -1;
};

/// Scale-matched default inverse temperature: n / ||X||_F^2.
double default_lambda(const DataMatrix& data);

/// O^(0) uniform on the manifold (or spectral: top-R right singular vectors
/// of X, columns sign-flipped to nonnegative sum), U^(0) = O^(0) entrywise.
LatentState init_state(const DataMatrix& data, const SamplerConfig& config, Rng& rng);

/// Riemannian Langevin step in O at fixed U: geodesic step along
/// h * grad + sqrt(2h) * Z with Z ambient Gaussian projected to the tangent
/// space. The explicit-noise overload is the deterministic core (and the
/// zero-noise test hook); the Rng overload draws Z itself.
StiefelPoint o_step(const LatentState& state, const SamplerConfig& config,
                    const Eigen::MatrixXd& ambient_noise);
StiefelPoint o_step(const LatentState& state, const SamplerConfig& config, Rng& rng);

/// Euclidean Langevin step in U at fixed (fresh) O:
/// U - h ((lambda/2) grad_loss + (U - |O|)/mu^2) + sqrt(2h) Z.
/// Throws DivergedStep if the result is not finite.
Eigen::MatrixXd u_step(const LatentState& state, const DataMatrix& data,
                       const SamplerConfig& config, const Eigen::MatrixXd& noise);
Eigen::MatrixXd u_step(const LatentState& state, const DataMatrix& data,
                       const SamplerConfig& config, Rng& rng);

/// Alternating chain: o_step then u_step, n_iters times, deterministic given
/// the seed. On divergence the partial trace is returned with the error flag
/// set instead of throwing.
ChainTrace run_chain(const DataMatrix& data, const SamplerConfig& config);

}  // namespace stiefelclust
