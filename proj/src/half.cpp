#include "coin/half.hpp"

#include <bit>

namespace coin {

namespace {
constexpr float kHalfMax = 65504.0f;
}

std::uint16_t float_to_half_bits(float value) {
  const std::uint32_t f = std::bit_cast<std::uint32_t>(value);
  const std::uint16_t sign = static_cast<std::uint16_t>((f >> 16) & 0x8000u);
  const std::uint32_t mag = f & 0x7fffffffu;

  if (mag >= 0x7f800000u) {
    if (mag == 0x7f800000u) return sign | 0x7c00u;  // infinity
    return sign | 0x7e00u;                          // NaN (canonical quiet)
  }
  if (std::bit_cast<float>(mag) > kHalfMax) {
    return sign | 0x7bffu;  // saturate out-of-range finite magnitudes
  }

  const int exp = static_cast<int>(mag >> 23) - 127;
  const std::uint32_t mant = mag & 0x7fffffu;

  if (exp >= -14) {
    // Normal half-precision range: keep 10 mantissa bits, RNE on the rest.
    std::uint32_t h = (static_cast<std::uint32_t>(exp + 15) << 10) | (mant >> 13);
    const std::uint32_t rest = mant & 0x1fffu;
    if (rest > 0x1000u || (rest == 0x1000u && (h & 1u))) ++h;
    return sign | static_cast<std::uint16_t>(h);
  }

  // Below 2^-25 (half of the smallest subnormal) everything rounds to zero;
  // the exact tie 2^-25 goes to zero under ties-to-even.
  if (mag <= 0x33000000u) return sign;

  // Subnormal half: value = full * 2^(exp-23) with full in [2^23, 2^24).
  // f32 subnormals themselves are far below 2^-25 and were handled above.
  const std::uint32_t full = mant | 0x800000u;
  const int shift = 13 + (-14 - exp);  // in [14, 24]
  std::uint32_t h = full >> shift;
  const std::uint32_t rest = full & ((1u << shift) - 1u);
  const std::uint32_t halfway = 1u << (shift - 1);
  if (rest > halfway || (rest == halfway && (h & 1u))) ++h;
  return sign | static_cast<std::uint16_t>(h);
}

float half_bits_to_float(std::uint16_t bits) {
  const std::uint32_t sign = static_cast<std::uint32_t>(bits & 0x8000u) << 16;
  const std::uint32_t exp = (bits >> 10) & 0x1fu;
  std::uint32_t mant = bits & 0x3ffu;

  std::uint32_t f;
  if (exp == 0) {
    if (mant == 0) {
      f = sign;  // +/- zero
    } else {
      // Normalize the subnormal.
      int e = 0;
      while (!(mant & 0x400u)) {
        mant <<= 1;
        ++e;
      }
      f = sign | (static_cast<std::uint32_t>(127 - 15 - e) << 23) | ((mant & 0x3ffu) << 13);
    }
  } else if (exp == 31) {
    f = sign | 0x7f800000u | (mant << 13);
  } else {
    f = sign | ((exp - 15 + 127) << 23) | (mant << 13);
  }
  return std::bit_cast<float>(f);
}

}  // namespace coin
