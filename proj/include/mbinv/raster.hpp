#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "mbinv/error.hpp"

namespace mbinv {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Continuous coordinates over a raster: origin at the geometric center of the
// grid, one length unit per pixel, y pointing up (storage rows grow downward).
class CoordinateFrame {
 public:
  CoordinateFrame() = default;
  CoordinateFrame(std::size_t width, std::size_t height)
      : origin_col_((static_cast<double>(width) - 1.0) / 2.0),
        origin_row_((static_cast<double>(height) - 1.0) / 2.0) {}

  double origin_col() const noexcept { return origin_col_; }
  double origin_row() const noexcept { return origin_row_; }

  double x_of_col(double col) const noexcept { return col - origin_col_; }
  double y_of_row(double row) const noexcept { return origin_row_ - row; }
  double col_of_x(double x) const noexcept { return x + origin_col_; }
  double row_of_y(double y) const noexcept { return origin_row_ - y; }

  Point to_continuous(double row, double col) const noexcept {
    return {x_of_col(col), y_of_row(row)};
  }

  friend bool operator==(const CoordinateFrame&, const CoordinateFrame&) = default;

 private:
  double origin_col_ = 0.0;
  double origin_row_ = 0.0;
};

// Grayscale raster with non-negative finite intensities, row-major storage.
// Immutable once constructed.
class Image {
 public:
  Image(std::size_t width, std::size_t height, std::vector<double> pixels);
  static Image zeros(std::size_t width, std::size_t height);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  const CoordinateFrame& frame() const noexcept { return frame_; }

  double at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }
  std::span<const double> pixels() const noexcept { return pixels_; }
  std::span<const double> row(std::size_t r) const noexcept {
    return std::span<const double>(pixels_).subspan(r * width_, width_);
  }

  // Sum of intensities times unit pixel area.
  double total_mass() const noexcept;

  // Smallest count of all-zero rows/columns between nonzero content and any
  // border; width/height-sized when the image is entirely zero.
  std::size_t zero_margin() const noexcept;

  // Largest distance from `pivot` to the center of any nonzero pixel, or -1
  // when the image is entirely zero.
  double content_radius(Point pivot) const noexcept;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> pixels_;
  CoordinateFrame frame_;
};

Image load_pgm(const std::filesystem::path& path);
Image parse_pgm(std::span<const unsigned char> bytes);

// maxval must be 255 or 65535; samples are rounded half-up. Intensities
// outside [0,1] are rejected before anything is written.
void save_pgm(const Image& img, const std::filesystem::path& path, unsigned maxval = 65535,
              bool binary = true);
std::vector<unsigned char> encode_pgm(const Image& img, unsigned maxval = 65535, bool binary = true);

// Bilinear interpolation in the image's continuous frame with zero padding
// outside the grid.
double sample_bilinear(const Image& img, double x, double y) noexcept;

}  // namespace mbinv
