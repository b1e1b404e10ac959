#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

// Data-parallel inner loops behind the moment sums and the blur synthesizers.
// Every kernel has a scalar reference implementation; an AVX2 variant is
// compiled on x86-64 and selected at runtime when the CPU supports it.
// MBINV_SIMD=scalar|avx2 in the environment forces a backend.

namespace mbinv::simd {

enum class Backend { Scalar, Avx2 };

inline constexpr int kMaxPower = 15;

struct BilinearWeights {
  double top_left;
  double top_right;
  double bottom_left;
  double bottom_right;
};

// Source raster surrounded by a one-pixel ring of zeros. Coordinates passed
// to kernels are in unpadded pixel units (row 0, col 0 = first real pixel).
struct PaddedView {
  const double* data;
  std::size_t stride;  // padded width
  std::size_t rows;    // padded height
};

struct KernelTable {
  Backend backend;

  // sums[p] = sum_i (x0 + i)^p * values[i] for p = 0..max_power, each power
  // accumulated with Kahan compensation. max_power <= kMaxPower.
  void (*row_power_sums)(const double* values, std::size_t n, double x0, int max_power, double* sums);

  // out[i] += tl*top[i] + tr*top[i+1] + bl*bottom[i] + br*bottom[i+1]
  void (*accumulate_bilinear)(double* out, const double* top, const double* bottom, std::size_t n,
                              BilinearWeights w);

  // out[i] += bilinear sample of src at (row0 + i*drow, col0 + i*dcol); samples
  // whose 2x2 support leaves the padded raster contribute zero.
  void (*accumulate_affine)(double* out, std::size_t n, const PaddedView& src, double row0, double col0,
                            double drow, double dcol);
};

const KernelTable& scalar_kernels() noexcept;

// True when the variant was compiled in and the running CPU can execute it.
bool backend_available(Backend backend) noexcept;

// Throws std::invalid_argument for an unavailable backend.
const KernelTable& kernels_for(Backend backend);

// Fastest available backend, unless overridden by MBINV_SIMD. Resolved once.
const KernelTable& active_kernels();

std::string_view backend_name(Backend backend) noexcept;
std::optional<Backend> parse_backend(std::string_view name) noexcept;

namespace detail {
// Defined in kernels_avx2.cpp when compiled; null otherwise.
const KernelTable* avx2_table() noexcept;
}  // namespace detail

}  // namespace mbinv::simd
