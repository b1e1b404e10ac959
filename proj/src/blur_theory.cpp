#include "mbinv/blur_theory.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace mbinv {

namespace {

double ipow(double base, int exp) noexcept {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Integral of sin^s over [0, u] by the sine power reduction.
double sine_power_integral(int s, double u, double sin_u, double cos_u) {
  if (s == 0) return u;
  if (s == 1) {
    const double h = std::sin(0.5 * u);
    return 2.0 * h * h;  // 1 - cos(u) without cancellation
  }
  return -ipow(sin_u, s - 1) * cos_u / s + (s - 1.0) / s * sine_power_integral(s - 2, u, sin_u, cos_u);
}

double reduce(int c, int s, double u, double sin_u, double cos_u) {
  if (c == 0) return sine_power_integral(s, u, sin_u, cos_u);
  if (c == 1) return ipow(sin_u, s + 1) / (s + 1.0);
  // Lower the cosine power by two; every term stays in the original sin power.
  return ipow(cos_u, c - 1) * ipow(sin_u, s + 1) / (c + s) +
         (c - 1.0) / (c + s) * reduce(c - 2, s, u, sin_u, cos_u);
}

constexpr double kTaylorThreshold = 1e-6;

}  // namespace

Centroid predict_blurred_centroid(Centroid c, const LinearBlurParams& params) noexcept {
  return {c.xc + 0.5 * params.a * params.T, c.yc + 0.5 * params.b * params.T};
}

double binomial(int n, int k) noexcept {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double linear_coeff(int p, int q, int i, int j, const LinearBlurParams& params) {
  if (i < 0 || j < 0 || i > p || j > q)
    throw std::invalid_argument("linear_coeff requires 0 <= i <= p and 0 <= j <= q");
  const int gap = p + q - i - j;
  if (gap % 2 != 0) return 0.0;
  const double s = ipow(0.5 * params.T, gap) / (gap + 1.0);
  return binomial(p, i) * binomial(q, j) * ipow(params.a, p - i) * ipow(params.b, q - j) * s;
}

MomentSet predict_linear_blur_central_moments(const MomentSet& src, const LinearBlurParams& params,
                                              int max_order) {
  if (src.kind() != MomentKind::Central) throw std::invalid_argument("linear blur prediction needs central moments");
  if (max_order < 0 || src.max_order() < max_order)
    throw std::invalid_argument("source moments do not reach the requested order");
  params.validate();
  const Centroid shifted = predict_blurred_centroid({src.origin().x, src.origin().y}, params);
  MomentSet out(MomentKind::Central, max_order, Point{shifted.xc, shifted.yc},
                "predicted central moments of the linearly blurred image");
  for (int n = 0; n <= max_order; ++n) {
    for (int q = 0; q <= n; ++q) {
      const int p = n - q;
      if (n == 1) continue;  // first central moments vanish identically
      double sum = 0.0;
      for (int i = 0; i <= p; ++i) {
        for (int j = 0; j <= q; ++j) sum += src.at(i, j) * linear_coeff(p, q, i, j, params);
      }
      out.set(p, q, sum);
    }
  }
  return out;
}

double trig_moment_integral(int cos_power, int sin_power, double upper) {
  if (cos_power < 0 || sin_power < 0) throw std::invalid_argument("trig powers must be non-negative");
  if (upper == 0.0) return 0.0;
  return reduce(cos_power, sin_power, upper, std::sin(upper), std::cos(upper));
}

double trig_moment_mean(int cos_power, int sin_power, double upper) {
  if (cos_power < 0 || sin_power < 0) throw std::invalid_argument("trig powers must be non-negative");
  if (std::abs(upper) < kTaylorThreshold) {
    // cos^c t sin^s t = t^s (1 - (c/2 + s/6) t^2 + O(t^4))
    const double s = sin_power;
    const double lead = ipow(upper, sin_power) / (s + 1.0);
    const double next = (0.5 * cos_power + s / 6.0) * ipow(upper, sin_power + 2) / (s + 3.0);
    return lead - next;
  }
  return trig_moment_integral(cos_power, sin_power, upper) / upper;
}

double rotational_coeff(int p, int q, int k, const RotationalBlurParams& params) {
  if (p < 0 || q < 0 || k < 0 || k > p + q)
    throw std::invalid_argument("rotational_coeff requires 0 <= k <= p+q");
  const double sweep = params.sweep();
  double h = 0.0;
  for (int i = std::max(0, k - q); i <= std::min(k, p); ++i) {
    const double sign = (k - i) % 2 == 0 ? 1.0 : -1.0;
    h += sign * binomial(p, i) * binomial(q, k - i) * trig_moment_mean(q + 2 * i - k, p + k - 2 * i, sweep);
  }
  return h;
}

RotationalCoefficientTable::RotationalCoefficientTable(double sweep, int max_order)
    : sweep_(sweep), max_order_(max_order) {
  if (max_order < 0) throw std::invalid_argument("max_order must be non-negative");
  RotationalBlurParams params;
  params.omega = sweep;
  params.T = 1.0;
  for (int n = 0; n <= max_order; ++n) {
    for (int q = 0; q <= n; ++q) {
      for (int k = 0; k <= n; ++k) coeffs_.push_back(rotational_coeff(n - q, q, k, params));
    }
  }
}

double RotationalCoefficientTable::operator()(int p, int q, int k) const {
  const int n = p + q;
  if (p < 0 || q < 0 || n > max_order_ || k < 0 || k > n) throw std::out_of_range("coefficient index out of range");
  // Orders below n occupy sum_{m<n} (m+1)^2 entries.
  const std::size_t before = static_cast<std::size_t>(n) * (n + 1) * (2 * n + 1) / 6;
  return coeffs_[before + static_cast<std::size_t>(q) * (n + 1) + static_cast<std::size_t>(k)];
}

MomentSet predict_rotational_blur_raw_moments(const MomentSet& src, const RotationalBlurParams& params,
                                              int max_order) {
  if (src.kind() != MomentKind::Raw) throw std::invalid_argument("rotational blur prediction needs raw moments");
  if (max_order < 0 || src.max_order() < max_order)
    throw std::invalid_argument("source moments do not reach the requested order");
  params.validate();
  constexpr double kFrameTolerance = 1e-9;
  if (std::abs(src.origin().x - params.center.x) > kFrameTolerance ||
      std::abs(src.origin().y - params.center.y) > kFrameTolerance)
    throw FrameMismatchError();

  const RotationalCoefficientTable table(params.sweep(), max_order);
  MomentSet out(MomentKind::Raw, max_order, src.origin(),
                "predicted raw moments of the rotationally blurred image about the rotation center");
  for (int n = 0; n <= max_order; ++n) {
    for (int q = 0; q <= n; ++q) {
      const int p = n - q;
      double sum = 0.0;
      for (int k = 0; k <= n; ++k) sum += src.at(k, n - k) * table(p, q, k);
      out.set(p, q, sum);
    }
  }
  return out;
}

}  // namespace mbinv
