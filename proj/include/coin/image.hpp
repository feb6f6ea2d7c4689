#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "coin/siren.hpp"

namespace coin {

// 8-bit-sourced RGB image normalized to [0,1], row-major, channel-interleaved.
class ImagePlane {
 public:
  ImagePlane(int width, int height);  // zero-filled
  ImagePlane(int width, int height, std::vector<float> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * height_;
  }

  std::span<const float> pixels() const noexcept { return pixels_; }
  std::span<float> pixels() noexcept { return pixels_; }

  float at(int x, int y, int channel) const {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * 3 + channel];
  }
  float& at(int x, int y, int channel) {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * 3 + channel];
  }

 private:
  int width_;
  int height_;
  std::vector<float> pixels_;
};

// Reads an 8-bit raster image (PNG or binary PPM, detected from the file
// contents); channels map to [0,1] as v/255.
ImagePlane load_image(const std::filesystem::path& path);

// Writes 8-bit RGB; format chosen by extension (.png or .ppm). Values are
// clamped to [0,1] and rounded to the nearest 8-bit level.
void save_image(const ImagePlane& plane, const std::filesystem::path& path);

// Rounds every channel to the nearest 8-bit level, i.e. what save + load
// would produce, without touching the filesystem.
ImagePlane round_to_8bit(const ImagePlane& plane);

struct PixelRect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
};

// Sampling positions in the [-1,1] square tied to the pixel grid they were
// derived from.
struct CoordGrid {
  std::vector<Coord> coords;  // row-major
  int grid_width = 0;
  int grid_height = 0;
  int source_width = 0;  // dimensions the normalization was derived from
  int source_height = 0;
};

// Endpoint-inclusive grid: pixel i of n maps to 2i/(n-1) - 1, and a
// single-pixel dimension maps to 0. Row-major order matching ImagePlane.
CoordGrid full_grid(int width, int height);

// Same normalization as full_grid(width, height), resampled at `scale` times
// the resolution and/or restricted to `region` (a rectangle in source pixel
// units). At scale 1 a region's coordinates equal full_grid's for those
// pixels, exactly.
CoordGrid subgrid(int width, int height, double scale,
                  std::optional<PixelRect> region = std::nullopt);

// Mean squared error over all channels on the [0,1] scale.
double mse(const ImagePlane& reference, const ImagePlane& test);

// 10*log10(1/mse) in dB; +infinity when the images are identical.
double psnr(const ImagePlane& reference, const ImagePlane& test);

double psnr_from_mse(double mse_value);

}  // namespace coin
