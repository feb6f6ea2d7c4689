#pragma once

#include <cstdint>
#include <vector>

#include "coin/siren.hpp"

namespace coin {

// Network weights reduced to a transmission precision. The payload keeps the
// flat storage order of SirenNetwork; at 16 bits every entry is exactly
// representable in IEEE binary16.
struct QuantizedModel {
  QuantizedModel(const Architecture& a, int precision, std::vector<float> values);

  Architecture arch;
  int precision_bits;          // 16 or 32
  std::vector<float> payload;  // storage order
};

// Rounds each parameter to the nearest representable value at the requested
// precision (round-half-to-even for 16 bits, pass-through for 32). Finite
// magnitudes beyond the binary16 range saturate to +/-65504.
QuantizedModel quantize(const SirenNetwork& net, int precision_bits);

// Exact widening back to a network; idempotent through repeated round trips.
SirenNetwork dequantize(const QuantizedModel& q);

// #parameters * bits-per-parameter / #pixels.
double bits_per_pixel(const Architecture& arch, int precision_bits, int image_width,
                      int image_height);

}  // namespace coin
