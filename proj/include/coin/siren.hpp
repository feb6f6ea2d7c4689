#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace coin {

struct Coord {
  double x = 0.0;
  double y = 0.0;
};

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

// Fixed network topology: `hidden_layers` sine layers of `width` units between
// a 2-d coordinate input and a 3-d linear RGB output. freq_scale is the sine
// frequency multiplier applied inside every hidden activation.
class Architecture {
 public:
  static constexpr int kInputDim = 2;
  static constexpr int kOutputDim = 3;
  static constexpr float kDefaultFreqScale = 30.0f;

  Architecture(int hidden_layers, int width, float freq_scale = kDefaultFreqScale);

  int hidden_layers() const noexcept { return hidden_layers_; }
  int width() const noexcept { return width_; }
  float freq_scale() const noexcept { return freq_scale_; }

  // Number of linear maps, i.e. hidden layers plus the output layer.
  int layer_count() const noexcept { return hidden_layers_ + 1; }
  int layer_in_dim(int layer) const noexcept { return layer == 0 ? kInputDim : width_; }
  int layer_out_dim(int layer) const noexcept {
    return layer == layer_count() - 1 ? kOutputDim : width_;
  }

  // Total scalar count over all weight matrices and bias vectors.
  std::int64_t param_count() const noexcept;

  bool operator==(const Architecture&) const = default;

 private:
  int hidden_layers_;
  int width_;
  float freq_scale_;
};

// Parameters of one network, stored as a flat buffer in storage order:
// layer 0..L, within a layer the weight matrix row-major (rows = output
// units) followed by the bias vector. Values carry 32-bit semantics (every
// stored scalar is exactly representable as a float); arithmetic on them runs
// at double precision.
class SirenNetwork {
 public:
  explicit SirenNetwork(const Architecture& arch);  // zero-initialized
  SirenNetwork(const Architecture& arch, std::vector<double> params);

  const Architecture& arch() const noexcept { return arch_; }
  std::size_t param_count() const noexcept { return params_.size(); }

  std::span<const double> params() const noexcept { return params_; }
  std::span<double> params() noexcept { return params_; }

  std::span<const double> weights(int layer) const;
  std::span<const double> biases(int layer) const;
  std::span<double> weights(int layer);
  std::span<double> biases(int layer);

 private:
  std::size_t weight_offset(int layer) const;
  Architecture arch_;
  std::vector<double> params_;
};

// Loss gradient with the same flat layout as the network it was taken from.
struct GradientSet {
  explicit GradientSet(const Architecture& a);

  Architecture arch;
  std::vector<double> values;

  void zero();
};

// SIREN initialization: first-layer weights uniform on [-1/in_dim, 1/in_dim],
// deeper layers uniform on [-sqrt(6/fan_in)/freq_scale, +...]; biases share
// their layer's interval. Deterministic for a given seed.
SirenNetwork init_siren(const Architecture& arch, std::uint64_t seed);

// Evaluates the network on a batch of coordinates. Hidden layers compute
// sin(freq_scale * (Wx + b)); the output layer is affine and unclamped.
void forward(const SirenNetwork& net, std::span<const Coord> coords, std::span<Rgb> out);
std::vector<Rgb> forward(const SirenNetwork& net, std::span<const Coord> coords);

// Mean squared error over all batch scalars (3 per pixel) and its exact
// analytic gradient. Throws on batch length mismatch.
double backward(const SirenNetwork& net, std::span<const Coord> coords,
                std::span<const Rgb> targets, GradientSet& grads);

// Unnormalized building block for sharded training: adds the gradient of the
// summed squared error over `coords` into `grads` and returns that sum.
// Callers owning several shards combine them in a fixed order and rescale.
double backward_accumulate(const SirenNetwork& net, std::span<const Coord> coords,
                           std::span<const Rgb> targets, GradientSet& grads);

// Summed squared error of forward outputs against targets, no gradient.
double forward_sse(const SirenNetwork& net, std::span<const Coord> coords,
                   std::span<const Rgb> targets);

}  // namespace coin
