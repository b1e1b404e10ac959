#include <array>
#include <cmath>

#include "mbinv/simd/kernels.hpp"

namespace mbinv::simd {

namespace {

void row_power_sums_scalar(const double* values, std::size_t n, double x0, int max_power, double* sums) {
  std::array<double, kMaxPower + 1> s{};
  std::array<double, kMaxPower + 1> c{};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x0 + static_cast<double>(i);
    double term = values[i];
    for (int p = 0; p <= max_power; ++p) {
      const double y = term - c[p];
      const double t = s[p] + y;
      c[p] = (t - s[p]) - y;
      s[p] = t;
      term *= x;
    }
  }
  for (int p = 0; p <= max_power; ++p) sums[p] = s[p] - c[p];
}

void accumulate_bilinear_scalar(double* out, const double* top, const double* bottom, std::size_t n,
                                BilinearWeights w) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] += w.top_left * top[i] + w.top_right * top[i + 1] + w.bottom_left * bottom[i] +
              w.bottom_right * bottom[i + 1];
  }
}

void accumulate_affine_scalar(double* out, std::size_t n, const PaddedView& src, double row0, double col0,
                              double drow, double dcol) {
  const double max_r0 = static_cast<double>(src.rows) - 2.0;
  const double max_c0 = static_cast<double>(src.stride) - 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pr = row0 + static_cast<double>(i) * drow + 1.0;
    const double pc = col0 + static_cast<double>(i) * dcol + 1.0;
    const double r0 = std::floor(pr);
    const double c0 = std::floor(pc);
    if (!(r0 >= 0.0 && r0 <= max_r0 && c0 >= 0.0 && c0 <= max_c0)) continue;
    const double fr = pr - r0;
    const double fc = pc - c0;
    const double* p = src.data + static_cast<std::size_t>(r0) * src.stride + static_cast<std::size_t>(c0);
    const double top = (1.0 - fc) * p[0] + fc * p[1];
    const double bottom = (1.0 - fc) * p[src.stride] + fc * p[src.stride + 1];
    out[i] += (1.0 - fr) * top + fr * bottom;
  }
}

constexpr KernelTable kScalarTable{
    Backend::Scalar,
    &row_power_sums_scalar,
    &accumulate_bilinear_scalar,
    &accumulate_affine_scalar,
};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalarTable; }

}  // namespace mbinv::simd
