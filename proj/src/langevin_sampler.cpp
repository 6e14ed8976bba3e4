#include "stiefelclust/langevin_sampler.hpp"

#include <cmath>
#include <utility>

namespace stiefelclust {

void SamplerConfig::validate() const {
  params.validate();
  if (!(h > 0.0)) throw Error("step size h must be positive");
  if (n_iters < 1) throw Error("n_iters must be positive");
  if (effective_burn_in() >= n_iters) throw Error("burn_in must be < n_iters");
  if (thinning < 1) throw Error("thinning must be positive");
  if (reproject_every < 1) throw Error("reproject_every must be positive");
}

double default_lambda(const DataMatrix& data) {
  const double sq = data.X.squaredNorm();
  if (sq == 0.0) return 1.0;
  return static_cast<double>(data.n()) / sq;
}

LatentState init_state(const DataMatrix& data, const SamplerConfig& config, Rng& rng) {
  const Eigen::Index n = data.n();
  const Eigen::Index r = config.params.R;
  if (config.init == InitMode::kSpectral) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(data.X, Eigen::ComputeThinV);
    Eigen::MatrixXd v = svd.matrixV().leftCols(r);
    for (Eigen::Index j = 0; j < r; ++j) {
      if (v.col(j).sum() < 0.0) v.col(j) = -v.col(j);
    }
    StiefelPoint o = project_to_stiefel(v);
    Eigen::MatrixXd u = o.matrix();
    return LatentState{std::move(u), std::move(o)};
  }
  StiefelPoint o = sample_uniform(n, r, rng);
  Eigen::MatrixXd u = o.matrix();
  return LatentState{std::move(u), std::move(o)};
}

StiefelPoint o_step(const LatentState& state, const SamplerConfig& config,
                    const Eigen::MatrixXd& ambient_noise) {
  const StiefelPoint& o = state.O;
  const Eigen::MatrixXd grad = grad_O_log_prior(state.U, o, config.params.mu_prior);
  const TangentVector riem = riemannian_gradient(o, grad);
  const TangentVector z = tangent_project(o, ambient_noise);
  const Eigen::MatrixXd direction =
      config.h * riem.matrix() + std::sqrt(2.0 * config.h) * z.matrix();
  return exp_map(TangentVector(o, direction), 1.0);
}

StiefelPoint o_step(const LatentState& state, const SamplerConfig& config, Rng& rng) {
  return o_step(state, config, gaussian_matrix(state.O.n(), state.O.rank(), rng));
}

Eigen::MatrixXd u_step(const LatentState& state, const DataMatrix& data,
                       const SamplerConfig& config, const Eigen::MatrixXd& noise) {
  const double mu2 = config.params.mu_prior * config.params.mu_prior;
  const Eigen::MatrixXd drift = 0.5 * config.params.lambda * loss_gradient_U(data, state.U) +
                                (state.U - state.O.matrix().cwiseAbs()) / mu2;
  Eigen::MatrixXd next =
      state.U - config.h * drift + std::sqrt(2.0 * config.h) * noise;
  if (!next.allFinite()) {
    throw DivergedStep("u_step produced non-finite entries (step size too large?)");
  }
  return next;
}

Eigen::MatrixXd u_step(const LatentState& state, const DataMatrix& data,
                       const SamplerConfig& config, Rng& rng) {
  return u_step(state, data, config, gaussian_matrix(state.U.rows(), state.U.cols(), rng));
}

ChainTrace run_chain(const DataMatrix& data, const SamplerConfig& config) {
  config.validate();
  Rng rng(config.seed);
  LatentState state = init_state(data, config, rng);

  ChainTrace trace;
  trace.loss_trace.reserve(static_cast<std::size_t>(config.n_iters));
  trace.log_post_trace.reserve(static_cast<std::size_t>(config.n_iters));
  const long burn_in = config.effective_burn_in();

  for (long iter = 0; iter < config.n_iters; ++iter) {
    try {
      StiefelPoint o_next = o_step(state, config, rng);
      if ((iter + 1) % config.reproject_every == 0) {
        o_next = project_to_stiefel(o_next.matrix());
      }
      state.O = std::move(o_next);
      state.U = u_step(state, data, config, rng);
    } catch (const DivergedStep&) {
      trace.diverged = true;
      trace.diverged_at = iter;
      return trace;
    }
    trace.loss_trace.push_back(loss(data, state.U));
    trace.log_post_trace.push_back(log_posterior_unnormalized(data, state, config.params));
    if (iter >= burn_in && (iter - burn_in) % config.thinning == 0) {
      trace.states.push_back(state);
    }
  }
  return trace;
}

}  // namespace stiefelclust
