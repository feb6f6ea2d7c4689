#include "coin/image.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <string>

#include "coin/errors.hpp"

namespace coin {

ImagePlane::ImagePlane(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) fail(Errc::InvalidArgument, "image dimensions must be positive");
  pixels_.assign(pixel_count() * 3, 0.0f);
}

ImagePlane::ImagePlane(int width, int height, std::vector<float> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 1 || height < 1) fail(Errc::InvalidArgument, "image dimensions must be positive");
  if (pixels_.size() != pixel_count() * 3) {
    fail(Errc::ShapeMismatch, "pixel buffer size does not match dimensions");
  }
  for (float v : pixels_) {
    if (!(v >= 0.0f && v <= 1.0f)) {
      fail(Errc::InvalidArgument, "pixel values must lie in [0,1]");
    }
  }
}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

ImagePlane from_rgb8(int width, int height, const std::vector<unsigned char>& rgb) {
  std::vector<float> px(rgb.size());
  for (std::size_t i = 0; i < rgb.size(); ++i) px[i] = static_cast<float>(rgb[i]) / 255.0f;
  return ImagePlane(width, height, std::move(px));
}

std::vector<unsigned char> to_rgb8(const ImagePlane& plane) {
  auto src = plane.pixels();
  std::vector<unsigned char> rgb(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    double v = src[i];
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
    rgb[i] = static_cast<unsigned char>(std::lround(v * 255.0));
  }
  return rgb;
}

ImagePlane load_png(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.string().c_str(), "rb"));
  if (!fp) fail(Errc::IoError, "cannot open " + path.string());

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(Errc::IoError, "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(Errc::IoError, "libpng init failed");
  }
  std::vector<unsigned char> rgb;
  std::vector<png_bytep> rows;
  int width = 0, height = 0;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(Errc::IoError, "failed to decode PNG " + path.string());
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));

  // Fold every variant down to 8-bit RGB.
  png_set_expand(png);
  if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
  if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY ||
      png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  if (png_get_rowbytes(png, info) != static_cast<std::size_t>(width) * 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(Errc::IoError, "unsupported PNG layout in " + path.string());
  }

  rgb.resize(static_cast<std::size_t>(width) * height * 3);
  rows.resize(height);
  for (int y = 0; y < height; ++y) {
    rows[y] = rgb.data() + static_cast<std::size_t>(y) * width * 3;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  if (width < 1 || height < 1) fail(Errc::IoError, "zero-dimension image");
  return from_rgb8(width, height, rgb);
}

void save_png(const ImagePlane& plane, const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.string().c_str(), "wb"));
  if (!fp) fail(Errc::IoError, "cannot write " + path.string());

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(Errc::IoError, "libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail(Errc::IoError, "libpng init failed");
  }
  auto rgb = to_rgb8(plane);
  std::vector<png_bytep> rows(plane.height());
  for (int y = 0; y < plane.height(); ++y) {
    rows[y] = rgb.data() + static_cast<std::size_t>(y) * plane.width() * 3;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(Errc::IoError, "failed to encode PNG " + path.string());
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, plane.width(), plane.height(), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

ImagePlane load_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path.string());

  auto next_token = [&in, &path]() -> std::string {
    std::string tok;
    char c;
    while (in.get(c)) {
      if (c == '#') {  // comment to end of line
        while (in.get(c) && c != '\n') {
        }
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!tok.empty()) return tok;
        continue;
      }
      tok.push_back(c);
    }
    if (tok.empty()) fail(Errc::IoError, "truncated PPM header in " + path.string());
    return tok;
  };

  if (next_token() != "P6") fail(Errc::IoError, "not a binary PPM: " + path.string());
  const long width = std::stol(next_token());
  const long height = std::stol(next_token());
  const long maxval = std::stol(next_token());
  if (width < 1 || height < 1) fail(Errc::IoError, "zero-dimension image");
  if (maxval != 255) fail(Errc::IoError, "only 8-bit PPM is supported");

  std::vector<unsigned char> rgb(static_cast<std::size_t>(width) * height * 3);
  in.read(reinterpret_cast<char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  if (in.gcount() != static_cast<std::streamsize>(rgb.size())) {
    fail(Errc::IoError, "truncated PPM payload in " + path.string());
  }
  return from_rgb8(static_cast<int>(width), static_cast<int>(height), rgb);
}

void save_ppm(const ImagePlane& plane, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + path.string());
  out << "P6\n" << plane.width() << " " << plane.height() << "\n255\n";
  auto rgb = to_rgb8(plane);
  out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  if (!out) fail(Errc::IoError, "failed writing " + path.string());
}

}  // namespace

ImagePlane load_image(const std::filesystem::path& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) fail(Errc::IoError, "cannot open " + path.string());
  unsigned char sig[8] = {};
  probe.read(reinterpret_cast<char*>(sig), sizeof(sig));
  const std::streamsize got = probe.gcount();
  probe.close();

  static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (got >= 8 && std::memcmp(sig, png_sig, 8) == 0) return load_png(path);
  if (got >= 2 && sig[0] == 'P' && sig[1] == '6') return load_ppm(path);
  fail(Errc::IoError, "unsupported image format: " + path.string());
}

void save_image(const ImagePlane& plane, const std::filesystem::path& path) {
  auto ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".png") {
    save_png(plane, path);
  } else if (ext == ".ppm") {
    save_ppm(plane, path);
  } else {
    fail(Errc::InvalidArgument, "unsupported image extension: " + path.string());
  }
}

ImagePlane round_to_8bit(const ImagePlane& plane) {
  auto rgb = to_rgb8(plane);
  return from_rgb8(plane.width(), plane.height(), rgb);
}

namespace {

// Continuous pixel index -> [-1,1]; a singleton axis sits at 0.
inline double normalize_index(double index, int n) {
  return n == 1 ? 0.0 : 2.0 * index / (n - 1) - 1.0;
}

}  // namespace

CoordGrid full_grid(int width, int height) {
  if (width < 1 || height < 1) fail(Errc::InvalidArgument, "grid dimensions must be positive");
  CoordGrid g;
  g.grid_width = width;
  g.grid_height = height;
  g.source_width = width;
  g.source_height = height;
  g.coords.reserve(static_cast<std::size_t>(width) * height);
  for (int j = 0; j < height; ++j) {
    const double y = normalize_index(j, height);
    for (int i = 0; i < width; ++i) {
      g.coords.push_back({normalize_index(i, width), y});
    }
  }
  return g;
}

CoordGrid subgrid(int width, int height, double scale, std::optional<PixelRect> region) {
  if (width < 1 || height < 1) fail(Errc::InvalidArgument, "grid dimensions must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    fail(Errc::InvalidArgument, "scale must be positive and finite");
  }
  PixelRect r = region.value_or(PixelRect{0, 0, width, height});
  if (r.w == 0 || r.h == 0) fail(Errc::EmptyRegion, "region is empty");
  if (r.x < 0 || r.y < 0 || r.w < 0 || r.h < 0 || r.x + r.w > width || r.y + r.h > height) {
    fail(Errc::InvalidArgument, "region exceeds image bounds");
  }

  const int out_w = std::max(1, static_cast<int>(std::lround(r.w * scale)));
  const int out_h = std::max(1, static_cast<int>(std::lround(r.h * scale)));

  // Sample positions are taken in source pixel-index space and pushed through
  // the same normalization as full_grid, so integer positions reproduce
  // full_grid coordinates bit for bit.
  auto index_at = [](int base, int extent, int samples, int k) -> double {
    if (samples == 1) return base + (extent - 1) / 2.0;
    return base + static_cast<double>(k) * (extent - 1) / (samples - 1);
  };

  CoordGrid g;
  g.grid_width = out_w;
  g.grid_height = out_h;
  g.source_width = width;
  g.source_height = height;
  g.coords.reserve(static_cast<std::size_t>(out_w) * out_h);
  for (int j = 0; j < out_h; ++j) {
    const double y = normalize_index(index_at(r.y, r.h, out_h, j), height);
    for (int i = 0; i < out_w; ++i) {
      g.coords.push_back({normalize_index(index_at(r.x, r.w, out_w, i), width), y});
    }
  }
  return g;
}

double mse(const ImagePlane& reference, const ImagePlane& test) {
  if (reference.width() != test.width() || reference.height() != test.height()) {
    fail(Errc::DimensionMismatch, "image dimensions differ");
  }
  auto a = reference.pixels();
  auto b = test.pixels();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

double psnr_from_mse(double mse_value) {
  if (mse_value <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse_value);
}

double psnr(const ImagePlane& reference, const ImagePlane& test) {
  return psnr_from_mse(mse(reference, test));
}

}  // namespace coin
