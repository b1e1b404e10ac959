#include "mbinv/blur_synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mbinv {

namespace {

// Copy of the source raster with `pad` zero pixels on every side.
struct PaddedRaster {
  std::vector<double> data;
  std::size_t stride;
  std::size_t rows;
  std::size_t pad;

  PaddedRaster(const Image& img, std::size_t pad_px)
      : stride(img.width() + 2 * pad_px), rows(img.height() + 2 * pad_px), pad(pad_px) {
    data.assign(stride * rows, 0.0);
    for (std::size_t r = 0; r < img.height(); ++r) {
      const auto src = img.row(r);
      std::copy(src.begin(), src.end(), data.begin() + static_cast<std::ptrdiff_t>((r + pad) * stride + pad));
    }
  }

  const double* at(std::ptrdiff_t row, std::ptrdiff_t col) const {
    return data.data() + (row + static_cast<std::ptrdiff_t>(pad)) * static_cast<std::ptrdiff_t>(stride) +
           (col + static_cast<std::ptrdiff_t>(pad));
  }
};

void check_rotation_margin(const Image& img, Point pivot) {
  const double radius = img.content_radius(pivot);
  if (radius < 0.0) return;
  const double half_w = (static_cast<double>(img.width()) - 1.0) / 2.0;
  const double half_h = (static_cast<double>(img.height()) - 1.0) / 2.0;
  const double room = std::min({half_w - pivot.x, half_w + pivot.x, half_h - pivot.y, half_h + pivot.y});
  if (radius + 2.0 > room)
    throw MarginError("rotation would truncate mass: content radius " + std::to_string(radius) +
                      " px needs " + std::to_string(radius + 2.0) + " px of room, grid offers " +
                      std::to_string(room));
}

Image finish(std::vector<double>& acc, const Image& like, int n) {
  const double inv = 1.0 / static_cast<double>(n);
  for (double& v : acc) v = std::max(0.0, v * inv);
  return Image(like.width(), like.height(), std::move(acc));
}

}  // namespace

void LinearBlurParams::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(T)) throw std::invalid_argument("blur params must be finite");
  if (!(T > 0.0)) throw std::invalid_argument("exposure T must be positive");
}

void RotationalBlurParams::validate() const {
  if (!std::isfinite(omega) || !std::isfinite(T) || !std::isfinite(center.x) || !std::isfinite(center.y))
    throw std::invalid_argument("blur params must be finite");
  if (!(T > 0.0)) throw std::invalid_argument("exposure T must be positive");
}

void TimeSampling::validate() const {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
}

Image synthesize_linear_blur(const Image& img, const LinearBlurParams& params, TimeSampling sampling,
                             const simd::KernelTable& kernels) {
  params.validate();
  sampling.validate();
  const double dx_total = params.a * params.T;
  const double dy_total = params.b * params.T;
  if (dx_total == 0.0 && dy_total == 0.0) return img;

  const auto reach = static_cast<std::size_t>(std::ceil(std::hypot(dx_total, dy_total)));
  if (img.zero_margin() < reach + 2)
    throw MarginError("blur would truncate mass: zero margin " + std::to_string(img.zero_margin()) +
                      " px, need " + std::to_string(reach + 2));

  const PaddedRaster src(img, reach + 2);
  std::vector<double> acc(img.width() * img.height(), 0.0);
  const auto width = static_cast<std::ptrdiff_t>(img.width());

  for (int k = 0; k < sampling.n_samples; ++k) {
    const double s = sampling.node(k, params.T);
    // Output (row, col) reads the source at (row + b s, col - a s): y points up.
    const double src_row = params.b * s;
    const double src_col = -(params.a * s);
    const double r0 = std::floor(src_row);
    const double c0 = std::floor(src_col);
    const double fr = src_row - r0;
    const double fc = src_col - c0;
    const simd::BilinearWeights w{(1.0 - fr) * (1.0 - fc), (1.0 - fr) * fc, fr * (1.0 - fc), fr * fc};
    const auto dr = static_cast<std::ptrdiff_t>(r0);
    const auto dc = static_cast<std::ptrdiff_t>(c0);
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(img.height()); ++r) {
      kernels.accumulate_bilinear(acc.data() + r * width, src.at(r + dr, dc), src.at(r + dr + 1, dc),
                                  img.width(), w);
    }
  }
  return finish(acc, img, sampling.n_samples);
}

Image synthesize_linear_blur(const Image& img, const LinearBlurParams& params, TimeSampling sampling) {
  return synthesize_linear_blur(img, params, sampling, simd::active_kernels());
}

Image synthesize_rotational_blur(const Image& img, const RotationalBlurParams& params, TimeSampling sampling,
                                 const simd::KernelTable& kernels) {
  params.validate();
  sampling.validate();
  const double sweep = params.sweep();
  if (sweep == 0.0) return img;
  check_rotation_margin(img, params.center);

  const PaddedRaster src(img, 1);
  const simd::PaddedView view{src.data.data(), src.stride, src.rows};
  const CoordinateFrame& frame = img.frame();
  std::vector<double> acc(img.width() * img.height(), 0.0);

  for (int k = 0; k < sampling.n_samples; ++k) {
    const double beta = sampling.node(k, sweep);
    const double cb = std::cos(beta);
    const double sb = std::sin(beta);
    for (std::size_t r = 0; r < img.height(); ++r) {
      // Source point of output column 0 in this row, then its per-column step.
      const double x = frame.x_of_col(0.0) - params.center.x;
      const double y = frame.y_of_row(static_cast<double>(r)) - params.center.y;
      const double sx = params.center.x + cb * x - sb * y;
      const double sy = params.center.y + sb * x + cb * y;
      kernels.accumulate_affine(acc.data() + r * img.width(), img.width(), view, frame.row_of_y(sy),
                                frame.col_of_x(sx), -sb, cb);
    }
  }
  return finish(acc, img, sampling.n_samples);
}

Image synthesize_rotational_blur(const Image& img, const RotationalBlurParams& params, TimeSampling sampling) {
  return synthesize_rotational_blur(img, params, sampling, simd::active_kernels());
}

Image synthesize_rotation(const Image& img, double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("rotation angle must be finite");
  if (angle == 0.0) return img;
  check_rotation_margin(img, Point{});
  const PaddedRaster src(img, 1);
  const simd::PaddedView view{src.data.data(), src.stride, src.rows};
  const CoordinateFrame& frame = img.frame();
  // Content turns by +angle, so the output samples the source at R(-angle)p.
  const double c = std::cos(angle);
  const double s = -std::sin(angle);
  std::vector<double> out(img.width() * img.height(), 0.0);
  const auto& kernels = simd::active_kernels();
  for (std::size_t r = 0; r < img.height(); ++r) {
    const double x = frame.x_of_col(0.0);
    const double y = frame.y_of_row(static_cast<double>(r));
    kernels.accumulate_affine(out.data() + r * img.width(), img.width(), view, frame.row_of_y(s * x + c * y),
                              frame.col_of_x(c * x - s * y), -s, c);
  }
  for (double& v : out) v = std::max(0.0, v);
  return Image(img.width(), img.height(), std::move(out));
}

Image translate(const Image& img, long dx, long dy) {
  std::vector<double> out(img.width() * img.height(), 0.0);
  const long w = static_cast<long>(img.width());
  const long h = static_cast<long>(img.height());
  for (long r = 0; r < h; ++r) {
    for (long c = 0; c < w; ++c) {
      const double v = img.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      if (v == 0.0) continue;
      const long nr = r - dy;
      const long nc = c + dx;
      if (nr < 0 || nc < 0 || nr >= h || nc >= w) throw MarginError("translation would truncate mass");
      out[static_cast<std::size_t>(nr * w + nc)] = v;
    }
  }
  return Image(img.width(), img.height(), std::move(out));
}

}  // namespace mbinv
