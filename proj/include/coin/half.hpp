#pragma once

#include <cstdint>

namespace coin {

// IEEE 754 binary16 conversion. float_to_half_bits rounds to nearest, ties to
// even; finite values beyond the half range saturate to +/-65504 instead of
// overflowing to infinity. Infinities and NaN map to their half counterparts.
std::uint16_t float_to_half_bits(float value);

// Exact widening, including subnormals, infinities and NaN.
float half_bits_to_float(std::uint16_t bits);

}  // namespace coin
