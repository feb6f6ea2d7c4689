#include "coin/quantize.hpp"

#include "coin/errors.hpp"
#include "coin/half.hpp"

namespace coin {

namespace {

void check_precision(int bits) {
  if (bits != 16 && bits != 32) {
    fail(Errc::InvalidArgument, "precision_bits must be 16 or 32");
  }
}

}  // namespace

QuantizedModel::QuantizedModel(const Architecture& a, int precision, std::vector<float> values)
    : arch(a), precision_bits(precision), payload(std::move(values)) {
  check_precision(precision_bits);
  if (payload.size() != static_cast<std::size_t>(arch.param_count())) {
    fail(Errc::LengthMismatch, "payload length does not match architecture");
  }
}

QuantizedModel quantize(const SirenNetwork& net, int precision_bits) {
  check_precision(precision_bits);
  std::vector<float> payload(net.param_count());
  auto params = net.params();
  if (precision_bits == 32) {
    for (std::size_t i = 0; i < payload.size(); ++i) {
      payload[i] = static_cast<float>(params[i]);
    }
  } else {
    for (std::size_t i = 0; i < payload.size(); ++i) {
      payload[i] = half_bits_to_float(float_to_half_bits(static_cast<float>(params[i])));
    }
  }
  return QuantizedModel(net.arch(), precision_bits, std::move(payload));
}

SirenNetwork dequantize(const QuantizedModel& q) {
  std::vector<double> params(q.payload.begin(), q.payload.end());
  return SirenNetwork(q.arch, std::move(params));
}

double bits_per_pixel(const Architecture& arch, int precision_bits, int image_width,
                      int image_height) {
  check_precision(precision_bits);
  if (image_width < 1 || image_height < 1) {
    fail(Errc::InvalidArgument, "image dimensions must be positive");
  }
  const double bits = static_cast<double>(arch.param_count()) * precision_bits;
  return bits / (static_cast<double>(image_width) * image_height);
}

}  // namespace coin
