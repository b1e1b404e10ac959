#include <immintrin.h>

#include <array>
#include <cmath>
#include <cstring>

#include "mbinv/simd/kernels.hpp"

// Compiled with -mavx2 -mfma. Only explicit intrinsics are used for the
// arithmetic so the bilinear kernels round exactly like the scalar reference;
// the power sums differ from it only by the lane split of the accumulation.

namespace mbinv::simd {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

void row_power_sums_avx2(const double* values, std::size_t n, double x0, int max_power, double* sums) {
  std::array<__m256d, kMaxPower + 1> s;
  std::array<__m256d, kMaxPower + 1> c;
  for (int p = 0; p <= max_power; ++p) {
    s[p] = _mm256_setzero_pd();
    c[p] = _mm256_setzero_pd();
  }
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d base = _mm256_set1_pd(x0);

  auto step = [&](__m256d v, __m256d x) {
    __m256d term = v;
    for (int p = 0; p <= max_power; ++p) {
      const __m256d y = _mm256_sub_pd(term, c[p]);
      const __m256d t = _mm256_add_pd(s[p], y);
      c[p] = _mm256_sub_pd(_mm256_sub_pd(t, s[p]), y);
      s[p] = t;
      term = _mm256_mul_pd(term, x);
    }
  };

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_add_pd(base, _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), lane));
    step(_mm256_loadu_pd(values + i), x);
  }
  if (i < n) {
    alignas(32) double tail[4] = {0.0, 0.0, 0.0, 0.0};
    std::memcpy(tail, values + i, (n - i) * sizeof(double));
    const __m256d x = _mm256_add_pd(base, _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), lane));
    step(_mm256_load_pd(tail), x);
  }

  for (int p = 0; p <= max_power; ++p) sums[p] = hsum(_mm256_sub_pd(s[p], c[p]));
}

void accumulate_bilinear_avx2(double* out, const double* top, const double* bottom, std::size_t n,
                              BilinearWeights w) {
  const __m256d tl = _mm256_set1_pd(w.top_left);
  const __m256d tr = _mm256_set1_pd(w.top_right);
  const __m256d bl = _mm256_set1_pd(w.bottom_left);
  const __m256d br = _mm256_set1_pd(w.bottom_right);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_mul_pd(tl, _mm256_loadu_pd(top + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(tr, _mm256_loadu_pd(top + i + 1)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(bl, _mm256_loadu_pd(bottom + i)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(br, _mm256_loadu_pd(bottom + i + 1)));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), acc));
  }
  for (; i < n; ++i) {
    out[i] += w.top_left * top[i] + w.top_right * top[i + 1] + w.bottom_left * bottom[i] +
              w.bottom_right * bottom[i + 1];
  }
}

void accumulate_affine_avx2(double* out, std::size_t n, const PaddedView& src, double row0, double col0,
                            double drow, double dcol) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d max_r0 = _mm256_set1_pd(static_cast<double>(src.rows) - 2.0);
  const __m256d max_c0 = _mm256_set1_pd(static_cast<double>(src.stride) - 2.0);
  const __m256d stride = _mm256_set1_pd(static_cast<double>(src.stride));
  const __m256d vr0 = _mm256_set1_pd(row0);
  const __m256d vc0 = _mm256_set1_pd(col0);
  const __m256d vdr = _mm256_set1_pd(drow);
  const __m256d vdc = _mm256_set1_pd(dcol);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m128i off_right = _mm_set1_epi32(1);
  const __m128i off_down = _mm_set1_epi32(static_cast<int>(src.stride));

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d idx = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), lane);
    const __m256d pr = _mm256_add_pd(_mm256_add_pd(vr0, _mm256_mul_pd(idx, vdr)), one);
    const __m256d pc = _mm256_add_pd(_mm256_add_pd(vc0, _mm256_mul_pd(idx, vdc)), one);
    const __m256d r0 = _mm256_floor_pd(pr);
    const __m256d c0 = _mm256_floor_pd(pc);
    __m256d valid = _mm256_and_pd(_mm256_cmp_pd(r0, zero, _CMP_GE_OQ), _mm256_cmp_pd(r0, max_r0, _CMP_LE_OQ));
    valid = _mm256_and_pd(valid, _mm256_cmp_pd(c0, zero, _CMP_GE_OQ));
    valid = _mm256_and_pd(valid, _mm256_cmp_pd(c0, max_c0, _CMP_LE_OQ));
    if (_mm256_movemask_pd(valid) == 0) continue;

    const __m256d fr = _mm256_sub_pd(pr, r0);
    const __m256d fc = _mm256_sub_pd(pc, c0);
    const __m256d flat = _mm256_blendv_pd(zero, _mm256_add_pd(_mm256_mul_pd(r0, stride), c0), valid);
    const __m128i base = _mm256_cvttpd_epi32(flat);
    const __m256d p00 = _mm256_i32gather_pd(src.data, base, 8);
    const __m256d p01 = _mm256_i32gather_pd(src.data, _mm_add_epi32(base, off_right), 8);
    const __m128i below = _mm_add_epi32(base, off_down);
    const __m256d p10 = _mm256_i32gather_pd(src.data, below, 8);
    const __m256d p11 = _mm256_i32gather_pd(src.data, _mm_add_epi32(below, off_right), 8);

    const __m256d gc = _mm256_sub_pd(one, fc);
    const __m256d top = _mm256_add_pd(_mm256_mul_pd(gc, p00), _mm256_mul_pd(fc, p01));
    const __m256d bottom = _mm256_add_pd(_mm256_mul_pd(gc, p10), _mm256_mul_pd(fc, p11));
    const __m256d value =
        _mm256_add_pd(_mm256_mul_pd(_mm256_sub_pd(one, fr), top), _mm256_mul_pd(fr, bottom));
    const __m256d current = _mm256_loadu_pd(out + i);
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(current, _mm256_add_pd(current, value), valid));
  }
  const double last_r0 = static_cast<double>(src.rows) - 2.0;
  const double last_c0 = static_cast<double>(src.stride) - 2.0;
  for (; i < n; ++i) {
    const double pr = row0 + static_cast<double>(i) * drow + 1.0;
    const double pc = col0 + static_cast<double>(i) * dcol + 1.0;
    const double r0 = std::floor(pr);
    const double c0 = std::floor(pc);
    if (!(r0 >= 0.0 && r0 <= last_r0 && c0 >= 0.0 && c0 <= last_c0)) continue;
    const double fr = pr - r0;
    const double fc = pc - c0;
    const double* p = src.data + static_cast<std::size_t>(r0) * src.stride + static_cast<std::size_t>(c0);
    const double top = (1.0 - fc) * p[0] + fc * p[1];
    const double bottom = (1.0 - fc) * p[src.stride] + fc * p[src.stride + 1];
    out[i] += (1.0 - fr) * top + fr * bottom;
  }
}

constexpr KernelTable kAvx2Table{
    Backend::Avx2,
    &row_power_sums_avx2,
    &accumulate_bilinear_avx2,
    &accumulate_affine_avx2,
};

}  // namespace

namespace detail {
const KernelTable* avx2_table() noexcept { return &kAvx2Table; }
}  // namespace detail

}  // namespace mbinv::simd
