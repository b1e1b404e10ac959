#pragma once

#include <cstddef>

#include "mbinv/invariants.hpp"
#include "mbinv/raster.hpp"

namespace mbinv {

struct MatchResult {
  std::size_t row = 0;  // top-left corner of the best window in the scene
  std::size_t col = 0;
  double distance = 0.0;
  std::size_t windows_scored = 0;
};

// Cuts the template-sized window whose top-left corner is (row, col). For the
// rmbmi family pixels outside the inscribed circle are zeroed.
Image extract_window(const Image& scene, std::size_t row, std::size_t col, std::size_t width, std::size_t height,
                     FeatureFamily family);

// Slides a template-sized window over the scene with the given stride and
// returns the window whose features lie closest to the template's. Features
// are taken with the window center as moment origin. Windows without mass are
// skipped; ties keep the top-left-most window in row-major order.
MatchResult template_match(const Image& scene, const Image& templ, int stride, FeatureFamily family);

}  // namespace mbinv
