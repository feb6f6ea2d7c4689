#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "coin/quantize.hpp"

namespace coin {

struct ImageDims {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  bool operator==(const ImageDims&) const = default;
};

struct CoinContents {
  QuantizedModel model;
  ImageDims dims;
};

// .coin container, all little-endian:
//   bytes 0-3   magic "COIN"
//   byte  4     format version (1)
//   byte  5     precision_bits (16 or 32)
//   bytes 6-7   hidden_layers (u16)
//   bytes 8-9   width (u16)
//   bytes 10-13 freq_scale (f32)
//   bytes 14-17 image width (u32)
//   bytes 18-21 image height (u32)
//   bytes 22-23 reserved, must be 0
//   payload     param_count scalars at precision_bits each, storage order
inline constexpr std::size_t kCoinHeaderSize = 24;
inline constexpr std::uint8_t kCoinVersion = 1;

std::vector<std::byte> encode_coin_bytes(const QuantizedModel& model, ImageDims dims);
CoinContents decode_coin_bytes(std::span<const std::byte> bytes);

void write_coin(const QuantizedModel& model, ImageDims dims, const std::filesystem::path& path);
CoinContents read_coin(const std::filesystem::path& path);

// Size in bytes of the file encode_coin_bytes would produce.
std::size_t coin_file_size(const Architecture& arch, int precision_bits);

// FNV-1a over the encoded payload bytes, as printed by the info command.
std::uint64_t payload_checksum(const QuantizedModel& model);

std::uint64_t fnv1a(std::span<const std::byte> bytes, std::uint64_t seed = 14695981039346656037ull);

}  // namespace coin
