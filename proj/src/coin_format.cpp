#include "coin/coin_format.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "coin/errors.hpp"
#include "coin/half.hpp"

namespace coin {

namespace {

void put_u16(std::vector<std::byte>& out, std::uint16_t v) {
  out.push_back(static_cast<std::byte>(v & 0xff));
  out.push_back(static_cast<std::byte>(v >> 8));
}

void put_u32(std::vector<std::byte>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xff));
}

std::uint16_t get_u16(std::span<const std::byte> b, std::size_t off) {
  return static_cast<std::uint16_t>(std::to_integer<std::uint16_t>(b[off]) |
                                    (std::to_integer<std::uint16_t>(b[off + 1]) << 8));
}

std::uint32_t get_u32(std::span<const std::byte> b, std::size_t off) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::to_integer<std::uint32_t>(b[off + i]) << (8 * i);
  return v;
}

}  // namespace

std::uint64_t fnv1a(std::span<const std::byte> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (std::byte b : bytes) {
    h ^= std::to_integer<std::uint64_t>(b);
    h *= 1099511628211ull;
  }
  return h;
}

std::size_t coin_file_size(const Architecture& arch, int precision_bits) {
  return kCoinHeaderSize +
         static_cast<std::size_t>(arch.param_count()) * (precision_bits / 8);
}

std::vector<std::byte> encode_coin_bytes(const QuantizedModel& model, ImageDims dims) {
  if (model.arch.hidden_layers() > 0xffff || model.arch.width() > 0xffff) {
    fail(Errc::InvalidArgument, "architecture exceeds header field range");
  }
  if (dims.width == 0 || dims.height == 0) {
    fail(Errc::InvalidArgument, "image dimensions must be positive");
  }

  std::vector<std::byte> out;
  out.reserve(coin_file_size(model.arch, model.precision_bits));
  out.push_back(std::byte{'C'});
  out.push_back(std::byte{'O'});
  out.push_back(std::byte{'I'});
  out.push_back(std::byte{'N'});
  out.push_back(std::byte{kCoinVersion});
  out.push_back(static_cast<std::byte>(model.precision_bits));
  put_u16(out, static_cast<std::uint16_t>(model.arch.hidden_layers()));
  put_u16(out, static_cast<std::uint16_t>(model.arch.width()));
  put_u32(out, std::bit_cast<std::uint32_t>(model.arch.freq_scale()));
  put_u32(out, dims.width);
  put_u32(out, dims.height);
  put_u16(out, 0);  // reserved

  if (model.precision_bits == 16) {
    for (float v : model.payload) put_u16(out, float_to_half_bits(v));
  } else {
    for (float v : model.payload) put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

CoinContents decode_coin_bytes(std::span<const std::byte> bytes) {
  if (bytes.size() < kCoinHeaderSize) fail(Errc::Truncated, "file shorter than header");
  if (std::to_integer<char>(bytes[0]) != 'C' || std::to_integer<char>(bytes[1]) != 'O' ||
      std::to_integer<char>(bytes[2]) != 'I' || std::to_integer<char>(bytes[3]) != 'N') {
    fail(Errc::BadMagic, "not a coin file");
  }
  if (std::to_integer<std::uint8_t>(bytes[4]) != kCoinVersion) {
    fail(Errc::UnsupportedVersion, "unsupported format version");
  }
  const int precision = std::to_integer<std::uint8_t>(bytes[5]);
  const int hidden_layers = get_u16(bytes, 6);
  const int width = get_u16(bytes, 8);
  const float freq_scale = std::bit_cast<float>(get_u32(bytes, 10));
  ImageDims dims{get_u32(bytes, 14), get_u32(bytes, 18)};
  const std::uint16_t reserved = get_u16(bytes, 22);

  if (precision != 16 && precision != 32) fail(Errc::BadHeader, "bad precision_bits");
  if (hidden_layers < 1 || width < 1) fail(Errc::BadHeader, "bad architecture fields");
  if (!(freq_scale > 0.0f) || !std::isfinite(freq_scale)) fail(Errc::BadHeader, "bad freq_scale");
  if (dims.width == 0 || dims.height == 0) fail(Errc::BadHeader, "bad image dimensions");
  if (reserved != 0) fail(Errc::BadHeader, "reserved bytes must be zero");

  Architecture arch(hidden_layers, width, freq_scale);
  const std::size_t n = static_cast<std::size_t>(arch.param_count());
  const std::size_t expected = kCoinHeaderSize + n * (precision / 8);
  if (bytes.size() < expected) fail(Errc::Truncated, "payload truncated");
  if (bytes.size() > expected) fail(Errc::LengthMismatch, "trailing bytes after payload");

  std::vector<float> payload(n);
  if (precision == 16) {
    for (std::size_t i = 0; i < n; ++i) {
      payload[i] = half_bits_to_float(get_u16(bytes, kCoinHeaderSize + 2 * i));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      payload[i] = std::bit_cast<float>(get_u32(bytes, kCoinHeaderSize + 4 * i));
    }
  }
  return CoinContents{QuantizedModel(arch, precision, std::move(payload)), dims};
}

void write_coin(const QuantizedModel& model, ImageDims dims,
                const std::filesystem::path& path) {
  const auto bytes = encode_coin_bytes(model, dims);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(Errc::IoError, "failed writing " + path.string());
}

CoinContents read_coin(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) fail(Errc::IoError, "cannot open " + path.string());
  const std::streamsize size = in.tellg();
  in.seekg(0);
  std::vector<std::byte> bytes(static_cast<std::size_t>(size));
  in.read(reinterpret_cast<char*>(bytes.data()), size);
  if (in.gcount() != size) fail(Errc::IoError, "failed reading " + path.string());
  return decode_coin_bytes(bytes);
}

std::uint64_t payload_checksum(const QuantizedModel& model) {
  std::vector<std::byte> raw;
  raw.reserve(model.payload.size() * (model.precision_bits / 8));
  if (model.precision_bits == 16) {
    for (float v : model.payload) put_u16(raw, float_to_half_bits(v));
  } else {
    for (float v : model.payload) put_u32(raw, std::bit_cast<std::uint32_t>(v));
  }
  return fnv1a(raw);
}

}  // namespace coin
