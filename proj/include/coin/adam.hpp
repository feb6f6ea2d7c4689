#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coin/siren.hpp"

namespace coin {

struct AdamConfig {
  double lr = 2e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Moment buffers plus step counter; shape-congruent with the parameters it
// updates. Moments are kept at double precision.
struct AdamState {
  std::uint64_t step = 0;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  AdamConfig config;
};

// Validates the config and returns a zeroed state for `param_count` scalars.
AdamState make_adam_state(std::size_t param_count, const AdamConfig& config = {});

// One bias-corrected Adam update on a flat parameter buffer.
void adam_apply(std::span<double> params, std::span<const double> grads, AdamState& state);

// Network-level update: applies adam_apply to the flat parameters, then
// rounds each parameter to its nearest float so stored values keep 32-bit
// semantics.
void adam_step(SirenNetwork& net, const GradientSet& grads, AdamState& state);

}  // namespace coin
