#pragma once

#include <cstdint>

#include "mbinv/raster.hpp"

namespace mbinv {

// Seeded mixture of smooth elliptical bumps, each (1 - r^2)^3 inside its
// ellipse and exactly zero outside. All content lies inside the disk of radius
// (min(width, height) - 1)/2 - margin about the raster center, so both linear
// blur up to `margin - 2` px and rotation about the center keep it on the grid.
struct BlobSpec {
  std::size_t width = 256;
  std::size_t height = 256;
  std::size_t margin = 40;
  int bumps = 5;
  double min_axis = 8.0;
  double max_axis = 24.0;
};

Image generate_blob_image(const BlobSpec& spec, std::uint64_t seed);

// Rotationally symmetric plateau about the raster center: 1 inside
// `inner_radius`, raised-cosine falloff to 0 over `edge_width`.
Image make_disk(std::size_t size, double inner_radius, double edge_width);

// Uniform axis-aligned rectangle of w x h pixels with top-left pixel at
// (row, col).
Image make_rectangle(std::size_t width, std::size_t height, std::size_t row, std::size_t col, std::size_t w,
                     std::size_t h, double intensity = 1.0);

}  // namespace mbinv
