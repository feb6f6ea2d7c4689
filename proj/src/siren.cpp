#include "coin/siren.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "coin/errors.hpp"

namespace coin {

Architecture::Architecture(int hidden_layers, int width, float freq_scale)
    : hidden_layers_(hidden_layers), width_(width), freq_scale_(freq_scale) {
  if (hidden_layers < 1) fail(Errc::InvalidArgument, "hidden_layers must be >= 1");
  if (width < 1) fail(Errc::InvalidArgument, "width must be >= 1");
  if (!(freq_scale > 0.0f) || !std::isfinite(freq_scale)) {
    fail(Errc::InvalidArgument, "freq_scale must be positive and finite");
  }
}

std::int64_t Architecture::param_count() const noexcept {
  const std::int64_t w = width_;
  const std::int64_t l = hidden_layers_;
  return (kInputDim * w + w) + (l - 1) * (w * w + w) + (w * kOutputDim + kOutputDim);
}

namespace {

// Offset of layer `layer`'s weight block in the flat storage-order buffer.
std::size_t weight_offset_of(const Architecture& arch, int layer) {
  std::size_t off = 0;
  for (int l = 0; l < layer; ++l) {
    off += static_cast<std::size_t>(arch.layer_out_dim(l)) *
               (static_cast<std::size_t>(arch.layer_in_dim(l)) + 1);
  }
  return off;
}

}  // namespace

SirenNetwork::SirenNetwork(const Architecture& arch)
    : arch_(arch), params_(static_cast<std::size_t>(arch.param_count()), 0.0) {}

SirenNetwork::SirenNetwork(const Architecture& arch, std::vector<double> params)
    : arch_(arch), params_(std::move(params)) {
  if (params_.size() != static_cast<std::size_t>(arch_.param_count())) {
    fail(Errc::ShapeMismatch, "parameter buffer does not match architecture");
  }
}

std::span<const double> SirenNetwork::weights(int layer) const {
  const std::size_t n =
      static_cast<std::size_t>(arch_.layer_out_dim(layer)) * arch_.layer_in_dim(layer);
  return {params_.data() + weight_offset_of(arch_, layer), n};
}

std::span<const double> SirenNetwork::biases(int layer) const {
  const std::size_t n =
      static_cast<std::size_t>(arch_.layer_out_dim(layer)) * arch_.layer_in_dim(layer);
  return {params_.data() + weight_offset_of(arch_, layer) + n,
          static_cast<std::size_t>(arch_.layer_out_dim(layer))};
}

std::span<double> SirenNetwork::weights(int layer) {
  auto s = static_cast<const SirenNetwork&>(*this).weights(layer);
  return {params_.data() + (s.data() - params_.data()), s.size()};
}

std::span<double> SirenNetwork::biases(int layer) {
  auto s = static_cast<const SirenNetwork&>(*this).biases(layer);
  return {params_.data() + (s.data() - params_.data()), s.size()};
}

GradientSet::GradientSet(const Architecture& a)
    : arch(a), values(static_cast<std::size_t>(a.param_count()), 0.0) {}

void GradientSet::zero() { std::fill(values.begin(), values.end(), 0.0); }

namespace {

// 53-bit uniform draw in [0, 1); mt19937_64 keeps the stream portable.
inline double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SirenNetwork init_siren(const Architecture& arch, std::uint64_t seed) {
  SirenNetwork net(arch);
  std::mt19937_64 rng(seed);
  const double omega = arch.freq_scale();

  for (int layer = 0; layer < arch.layer_count(); ++layer) {
    const int fan_in = arch.layer_in_dim(layer);
    const double bound =
        layer == 0 ? 1.0 / Architecture::kInputDim : std::sqrt(6.0 / fan_in) / omega;
    auto w = net.weights(layer);
    auto b = net.biases(layer);
    for (double& v : w) v = static_cast<float>(bound * (2.0 * next_unit(rng) - 1.0));
    for (double& v : b) v = static_cast<float>(bound * (2.0 * next_unit(rng) - 1.0));
  }
  return net;
}

namespace {

// Per-batch workspace: layer activations for one coordinate plus cached
// offsets into the flat parameter buffer. Widths are small enough that all of
// this stays in cache.
struct Scratch {
  explicit Scratch(const Architecture& arch) {
    const int layers = arch.layer_count();
    acts.resize(static_cast<std::size_t>(layers) + 1);
    pre.resize(layers);
    w_off.resize(layers);
    b_off.resize(layers);
    acts[0].resize(Architecture::kInputDim);
    for (int l = 0; l < layers; ++l) {
      acts[l + 1].resize(arch.layer_out_dim(l));
      pre[l].resize(arch.layer_out_dim(l));
      w_off[l] = weight_offset_of(arch, l);
      b_off[l] = w_off[l] + static_cast<std::size_t>(arch.layer_out_dim(l)) *
                                static_cast<std::size_t>(arch.layer_in_dim(l));
    }
    const std::size_t widest =
        std::max(arch.width(), Architecture::kOutputDim);
    delta.resize(widest);
    delta_prev.resize(widest);
  }

  std::vector<std::vector<double>> acts;  // acts[0] = input, acts[l+1] = layer l output
  std::vector<std::vector<double>> pre;   // pre-activation Wx+b per layer
  std::vector<std::size_t> w_off, b_off;
  std::vector<double> delta;
  std::vector<double> delta_prev;
};

// Runs one coordinate through the network, recording pre-activations for a
// backward pass.
inline void forward_one(const SirenNetwork& net, const Coord& c, Scratch& s) {
  const Architecture& arch = net.arch();
  const double omega = arch.freq_scale();
  const double* params = net.params().data();

  s.acts[0][0] = c.x;
  s.acts[0][1] = c.y;
  const int layers = arch.layer_count();
  for (int l = 0; l < layers; ++l) {
    const int in_dim = arch.layer_in_dim(l);
    const int out_dim = arch.layer_out_dim(l);
    const double* w = params + s.w_off[l];
    const double* b = params + s.b_off[l];
    const double* in = s.acts[l].data();
    double* z = s.pre[l].data();
    double* out = s.acts[l + 1].data();
    const bool last = l == layers - 1;
    for (int j = 0; j < out_dim; ++j) {
      const double* row = w + static_cast<std::size_t>(j) * in_dim;
      double acc = b[j];
      for (int i = 0; i < in_dim; ++i) acc += row[i] * in[i];
      z[j] = acc;
      out[j] = last ? acc : std::sin(omega * acc);
    }
  }
}

}  // namespace

void forward(const SirenNetwork& net, std::span<const Coord> coords, std::span<Rgb> out) {
  if (out.size() != coords.size()) fail(Errc::ShapeMismatch, "output batch length mismatch");
  Scratch s(net.arch());
  const int last = net.arch().layer_count();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    forward_one(net, coords[i], s);
    out[i] = {s.acts[last][0], s.acts[last][1], s.acts[last][2]};
  }
}

std::vector<Rgb> forward(const SirenNetwork& net, std::span<const Coord> coords) {
  std::vector<Rgb> out(coords.size());
  forward(net, coords, out);
  return out;
}

double backward_accumulate(const SirenNetwork& net, std::span<const Coord> coords,
                           std::span<const Rgb> targets, GradientSet& grads) {
  if (coords.size() != targets.size()) {
    fail(Errc::ShapeMismatch, "coords and targets batch lengths differ");
  }
  if (grads.values.size() != net.param_count() || !(grads.arch == net.arch())) {
    fail(Errc::ShapeMismatch, "gradient buffer does not match network");
  }

  const Architecture& arch = net.arch();
  const double omega = arch.freq_scale();
  const int layers = arch.layer_count();
  const double* params = net.params().data();
  double* gvals = grads.values.data();
  Scratch s(arch);

  double sse = 0.0;
  for (std::size_t p = 0; p < coords.size(); ++p) {
    forward_one(net, coords[p], s);

    const auto& out = s.acts[layers];
    const double dr = out[0] - targets[p].r;
    const double dg = out[1] - targets[p].g;
    const double db = out[2] - targets[p].b;
    sse += dr * dr + dg * dg + db * db;

    s.delta[0] = 2.0 * dr;
    s.delta[1] = 2.0 * dg;
    s.delta[2] = 2.0 * db;

    for (int l = layers - 1; l >= 0; --l) {
      const int in_dim = arch.layer_in_dim(l);
      const int out_dim = arch.layer_out_dim(l);
      const double* in = s.acts[l].data();
      double* gw = gvals + s.w_off[l];
      double* gb = gvals + s.b_off[l];

      if (l != layers - 1) {
        // delta holds dL/d(activation); pull it through the sine.
        const double* z = s.pre[l].data();
        for (int j = 0; j < out_dim; ++j) s.delta[j] *= omega * std::cos(omega * z[j]);
      }
      for (int j = 0; j < out_dim; ++j) {
        const double d = s.delta[j];
        double* grow = gw + static_cast<std::size_t>(j) * in_dim;
        for (int i = 0; i < in_dim; ++i) grow[i] += d * in[i];
        gb[j] += d;
      }
      if (l > 0) {
        const double* w = params + s.w_off[l];
        for (int i = 0; i < in_dim; ++i) s.delta_prev[i] = 0.0;
        for (int j = 0; j < out_dim; ++j) {
          const double d = s.delta[j];
          const double* row = w + static_cast<std::size_t>(j) * in_dim;
          for (int i = 0; i < in_dim; ++i) s.delta_prev[i] += row[i] * d;
        }
        std::swap(s.delta, s.delta_prev);
      }
    }
  }
  return sse;
}

double backward(const SirenNetwork& net, std::span<const Coord> coords,
                std::span<const Rgb> targets, GradientSet& grads) {
  grads.zero();
  const double sse = backward_accumulate(net, coords, targets, grads);
  const double scale = 1.0 / (3.0 * static_cast<double>(coords.size()));
  for (double& g : grads.values) g *= scale;
  return sse * scale;
}

double forward_sse(const SirenNetwork& net, std::span<const Coord> coords,
                   std::span<const Rgb> targets) {
  if (coords.size() != targets.size()) {
    fail(Errc::ShapeMismatch, "coords and targets batch lengths differ");
  }
  Scratch s(net.arch());
  const int last = net.arch().layer_count();
  double sse = 0.0;
  for (std::size_t p = 0; p < coords.size(); ++p) {
    forward_one(net, coords[p], s);
    const auto& out = s.acts[last];
    const double dr = out[0] - targets[p].r;
    const double dg = out[1] - targets[p].g;
    const double db = out[2] - targets[p].b;
    sse += dr * dr + dg * dg + db * db;
  }
  return sse;
}

}  // namespace coin
