#pragma once

#include <vector>

#include "mbinv/blur_synth.hpp"
#include "mbinv/moments.hpp"

// Closed-form moment propagation through motion blur. The blurred image's
// moments are linear combinations of the sharp image's moments:
//
//   linear:     u'_pq = sum_{i<=p, j<=q} u_ij C(p,i) C(q,j) a^(p-i) b^(q-j) S(p+q-i-j)
//               S(g) = (T/2)^g / (g+1) for even g, 0 for odd g
//   rotational: m'_pq = sum_{k=0}^{p+q} m_{k,p+q-k} H(p,q,k)
//               H(p,q,k) = sum_i (-1)^(k-i) C(p,i) C(q,k-i) * avg_{theta in [0,wT]}
//                          cos^(q+2i-k)(theta) sin^(p+k-2i)(theta)
//
// The rotational map acts on raw moments taken about the rotation center.

namespace mbinv {

Centroid predict_blurred_centroid(Centroid c, const LinearBlurParams& params) noexcept;

double binomial(int n, int k) noexcept;

// H(p,q,i,j). Throws std::invalid_argument unless 0 <= i <= p, 0 <= j <= q.
double linear_coeff(int p, int q, int i, int j, const LinearBlurParams& params);

MomentSet predict_linear_blur_central_moments(const MomentSet& src, const LinearBlurParams& params,
                                              int max_order);

// Integral of cos^c(t) sin^s(t) over [0, upper] by power reduction.
double trig_moment_integral(int cos_power, int sin_power, double upper);

// The same integral divided by `upper`, i.e. the mean of cos^c sin^s over the
// sweep. Falls back to a Taylor expansion for |upper| < 1e-6, where it is also
// defined at upper = 0.
double trig_moment_mean(int cos_power, int sin_power, double upper);

// H(p,q,k). Throws std::invalid_argument unless 0 <= k <= p+q.
double rotational_coeff(int p, int q, int k, const RotationalBlurParams& params);

// Coefficients H(p,q,k) for every p+q <= max_order under one sweep; built
// once per predictor call.
class RotationalCoefficientTable {
 public:
  RotationalCoefficientTable(double sweep, int max_order);

  double sweep() const noexcept { return sweep_; }
  int max_order() const noexcept { return max_order_; }
  double operator()(int p, int q, int k) const;

 private:
  double sweep_;
  int max_order_;
  std::vector<double> coeffs_;
};

// Throws FrameMismatchError when src is not about params.center.
MomentSet predict_rotational_blur_raw_moments(const MomentSet& src, const RotationalBlurParams& params,
                                              int max_order);

}  // namespace mbinv
