#include "mbinv/template_match.hpp"

#include <limits>
#include <stdexcept>

#include "mbinv/retrieval.hpp"

namespace mbinv {

Image extract_window(const Image& scene, std::size_t row, std::size_t col, std::size_t width, std::size_t height,
                     FeatureFamily family) {
  if (row + height > scene.height() || col + width > scene.width())
    throw std::invalid_argument("window exceeds the scene");
  std::vector<double> px(width * height);
  const bool circular = family == FeatureFamily::Rmbmi;
  const CoordinateFrame frame(width, height);
  const double radius = 0.5 * static_cast<double>(std::min(width, height));
  for (std::size_t r = 0; r < height; ++r) {
    const auto src = scene.row(row + r);
    for (std::size_t c = 0; c < width; ++c) {
      double v = src[col + c];
      if (circular) {
        const double x = frame.x_of_col(c), y = frame.y_of_row(r);
        if (x * x + y * y > radius * radius) v = 0.0;
      }
      px[r * width + c] = v;
    }
  }
  return Image(width, height, std::move(px));
}

MatchResult template_match(const Image& scene, const Image& templ, int stride, FeatureFamily family) {
  if (stride < 1) throw std::invalid_argument("stride must be at least 1");
  if (templ.width() > scene.width() || templ.height() > scene.height())
    throw std::invalid_argument("template is larger than the scene");
  const std::size_t tw = templ.width(), th = templ.height();
  const FeatureVector target = extract_features(extract_window(templ, 0, 0, tw, th, family), family);

  MatchResult best;
  best.distance = std::numeric_limits<double>::infinity();
  bool found = false;
  const auto step = static_cast<std::size_t>(stride);
  for (std::size_t r = 0; r + th <= scene.height(); r += step) {
    for (std::size_t c = 0; c + tw <= scene.width(); c += step) {
      const Image window = extract_window(scene, r, c, tw, th, family);
      if (window.total_mass() <= 0.0) continue;
      const double d = feature_distance(target, extract_features(window, family));
      ++best.windows_scored;
      if (!found || d < best.distance) {
        best.row = r;
        best.col = c;
        best.distance = d;
        found = true;
      }
    }
  }
  if (!found) throw Error("no scene window carries any mass");
  return best;
}

}  // namespace mbinv
