#include "mbinv/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace mbinv {

Image generate_blob_image(const BlobSpec& spec, std::uint64_t seed) {
  const double half = (static_cast<double>(std::min(spec.width, spec.height)) - 1.0) / 2.0;
  const double allowed = half - static_cast<double>(spec.margin);
  if (spec.bumps < 1 || spec.min_axis <= 0.0 || spec.max_axis < spec.min_axis || allowed < spec.max_axis + 1.0)
    throw std::invalid_argument("blob spec leaves no room for content");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> pixels(spec.width * spec.height, 0.0);
  const CoordinateFrame frame(spec.width, spec.height);

  for (int b = 0; b < spec.bumps; ++b) {
    const double ax = spec.min_axis + (spec.max_axis - spec.min_axis) * unit(rng);
    const double ay = spec.min_axis + (spec.max_axis - spec.min_axis) * unit(rng);
    const double theta = std::numbers::pi * unit(rng);
    const double amplitude = 0.3 + 0.7 * unit(rng);
    // Keep the whole ellipse (bounded by its larger axis) inside the disk.
    const double reach = allowed - std::max(ax, ay);
    const double rad = reach * std::sqrt(unit(rng));
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    const double cx = rad * std::cos(phi);
    const double cy = rad * std::sin(phi);
    const double ct = std::cos(theta), st = std::sin(theta);

    for (std::size_t r = 0; r < spec.height; ++r) {
      for (std::size_t c = 0; c < spec.width; ++c) {
        const Point p = frame.to_continuous(static_cast<double>(r), static_cast<double>(c));
        const double dx = p.x - cx, dy = p.y - cy;
        const double u = (ct * dx + st * dy) / ax;
        const double v = (-st * dx + ct * dy) / ay;
        const double r2 = u * u + v * v;
        if (r2 >= 1.0) continue;
        const double w = 1.0 - r2;
        pixels[r * spec.width + c] += amplitude * w * w * w;
      }
    }
  }
  const double peak = *std::max_element(pixels.begin(), pixels.end());
  for (double& v : pixels) v /= peak;
  return Image(spec.width, spec.height, std::move(pixels));
}

Image make_disk(std::size_t size, double inner_radius, double edge_width) {
  std::vector<double> pixels(size * size, 0.0);
  const CoordinateFrame frame(size, size);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      const Point p = frame.to_continuous(static_cast<double>(r), static_cast<double>(c));
      const double rad = std::hypot(p.x, p.y);
      double v = 0.0;
      if (rad <= inner_radius) {
        v = 1.0;
      } else if (rad < inner_radius + edge_width) {
        v = 0.5 * (1.0 + std::cos(std::numbers::pi * (rad - inner_radius) / edge_width));
      }
      pixels[r * size + c] = v;
    }
  }
  return Image(size, size, std::move(pixels));
}

Image make_rectangle(std::size_t width, std::size_t height, std::size_t row, std::size_t col, std::size_t w,
                     std::size_t h, double intensity) {
  if (row + h > height || col + w > width) throw std::invalid_argument("rectangle exceeds the raster");
  std::vector<double> pixels(width * height, 0.0);
  for (std::size_t r = row; r < row + h; ++r) {
    std::fill_n(pixels.begin() + static_cast<std::ptrdiff_t>(r * width + col), w, intensity);
  }
  return Image(width, height, std::move(pixels));
}

}  // namespace mbinv
