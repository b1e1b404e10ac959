#pragma once

#include <string>
#include <vector>

#include "mbinv/blur_spec.hpp"
#include "mbinv/blur_theory.hpp"

namespace mbinv {

struct MomentErrorRow {
  int p;
  int q;
  double predicted;
  double measured;
  double rel_error;
};

// Theory-vs-raster comparison for one image and one blur setting. Linear blur
// is compared on central moments, rotational blur on raw moments about the
// rotation center.
struct VerifyReport {
  BlurKind kind;
  int n_samples;
  double source_mass;
  double blurred_mass;
  std::vector<MomentErrorRow> rows;

  double max_error() const noexcept;
  double median_error() const;
  double mass_rel_change() const noexcept;
};

// |predicted - measured| / max(|measured|, m00 * rho^(p+q)), where rho is the
// RMS radius sqrt((m20 + m02)/m00) of the measured set. Moments of a given
// order are compared against the natural magnitude of that order, so entries
// that vanish by symmetry do not blow up the ratio.
double relative_moment_error(double predicted, double measured, double order_scale) noexcept;
std::vector<double> order_scales(const MomentSet& ms);

VerifyReport verify_blur_prediction(const Image& img, const BlurSpec& spec, TimeSampling sampling = {},
                                    int max_order = 4);

std::string to_csv(const VerifyReport& report);

}  // namespace mbinv
