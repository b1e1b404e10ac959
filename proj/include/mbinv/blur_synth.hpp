#pragma once

#include "mbinv/raster.hpp"
#include "mbinv/simd/kernels.hpp"

namespace mbinv {

// Translation with velocity (a, b) over exposure T. Only the products aT, bT
// affect the result.
struct LinearBlurParams {
  double a = 0.0;
  double b = 0.0;
  double T = 1.0;

  void validate() const;
};

// Rotation about `center` with angular velocity omega over exposure T.
struct RotationalBlurParams {
  double omega = 0.0;
  double T = 1.0;
  Point center{};

  double sweep() const noexcept { return omega * T; }
  void validate() const;
};

inline constexpr int kDefaultTimeSamples = 201;

// Midpoint rule over the exposure interval.
struct TimeSampling {
  int n_samples = kDefaultTimeSamples;

  void validate() const;
  // Midpoint of the k-th of n equal slices of [0, extent], k in [0, n).
  double node(int k, double extent) const noexcept {
    return ((static_cast<double>(k) + 0.5) * extent) / static_cast<double>(n_samples);
  }
};

// g(x, y) = (1/n) sum_k f(x - a s_k, y - b s_k), s_k the time midpoints.
// Throws MarginError when the zero border is thinner than the displacement
// length plus two pixels.
Image synthesize_linear_blur(const Image& img, const LinearBlurParams& params, TimeSampling sampling = {});
Image synthesize_linear_blur(const Image& img, const LinearBlurParams& params, TimeSampling sampling,
                             const simd::KernelTable& kernels);

// g(p) = (1/n) sum_k f(c + R(beta_k)(p - c)) with beta_k the angle midpoints
// of [0, omega T] and R(beta) the counter-clockwise rotation. Sampling the
// source at R(beta)p sweeps the content clockwise, which is the sense under
// which the blurred first moments obey
//   m10' = (m10 sin(wT) + m01 (1 - cos(wT))) / wT.
// Throws MarginError when rotated content could leave the grid.
Image synthesize_rotational_blur(const Image& img, const RotationalBlurParams& params,
                                 TimeSampling sampling = {});
Image synthesize_rotational_blur(const Image& img, const RotationalBlurParams& params, TimeSampling sampling,
                                 const simd::KernelTable& kernels);

// Rotates the content counter-clockwise by `angle` about the frame origin.
// rotational blur == average of synthesize_rotation(img, -beta_k).
Image synthesize_rotation(const Image& img, double angle);

// Integer translation of the content by (dx, dy) in frame units (y up).
Image translate(const Image& img, long dx, long dy);

}  // namespace mbinv
