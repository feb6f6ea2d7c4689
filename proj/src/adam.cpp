#include "coin/adam.hpp"

#include <cmath>

#include "coin/errors.hpp"

namespace coin {

AdamState make_adam_state(std::size_t param_count, const AdamConfig& config) {
  if (!(config.lr > 0.0) || !std::isfinite(config.lr)) {
    fail(Errc::InvalidArgument, "learning rate must be positive and finite");
  }
  if (!(config.beta1 > 0.0 && config.beta1 < 1.0) ||
      !(config.beta2 > 0.0 && config.beta2 < 1.0)) {
    fail(Errc::InvalidArgument, "betas must lie in (0, 1)");
  }
  if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon)) {
    fail(Errc::InvalidArgument, "epsilon must be positive and finite");
  }
  AdamState state;
  state.first_moment.assign(param_count, 0.0);
  state.second_moment.assign(param_count, 0.0);
  state.config = config;
  return state;
}

void adam_apply(std::span<double> params, std::span<const double> grads, AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.first_moment.size() ||
      params.size() != state.second_moment.size()) {
    fail(Errc::ShapeMismatch, "adam buffers are not shape-congruent");
  }

  const AdamConfig& c = state.config;
  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double bc1 = 1.0 - std::pow(c.beta1, t);
  const double bc2 = 1.0 - std::pow(c.beta2, t);

  double* m = state.first_moment.data();
  double* v = state.second_moment.data();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g;
    v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g * g;
    const double m_hat = m[i] / bc1;
    const double v_hat = v[i] / bc2;
    params[i] -= c.lr * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
}

void adam_step(SirenNetwork& net, const GradientSet& grads, AdamState& state) {
  if (!(grads.arch == net.arch())) {
    fail(Errc::ShapeMismatch, "gradient architecture does not match network");
  }
  adam_apply(net.params(), grads.values, state);
  for (double& p : net.params()) p = static_cast<float>(p);
}

}  // namespace coin
