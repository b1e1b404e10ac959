#include <cstdlib>
#include <stdexcept>
#include <string>

#include "mbinv/simd/kernels.hpp"

namespace mbinv::simd {

#ifndef MBINV_HAVE_AVX2_KERNELS
namespace detail {
const KernelTable* avx2_table() noexcept { return nullptr; }
}  // namespace detail
#endif

bool backend_available(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(MBINV_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return detail::avx2_table() != nullptr && __builtin_cpu_supports("avx2") &&
             __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Backend backend) {
  if (!backend_available(backend))
    throw std::invalid_argument("SIMD backend not available: " + std::string(backend_name(backend)));
  return backend == Backend::Avx2 ? *detail::avx2_table() : scalar_kernels();
}

const KernelTable& active_kernels() {
  static const KernelTable& table = []() -> const KernelTable& {
    if (const char* forced = std::getenv("MBINV_SIMD")) {
      if (auto b = parse_backend(forced); b && backend_available(*b)) return kernels_for(*b);
    }
    return backend_available(Backend::Avx2) ? kernels_for(Backend::Avx2) : scalar_kernels();
  }();
  return table;
}

std::string_view backend_name(Backend backend) noexcept {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

std::optional<Backend> parse_backend(std::string_view name) noexcept {
  if (name == "scalar") return Backend::Scalar;
  if (name == "avx2") return Backend::Avx2;
  return std::nullopt;
}

}  // namespace mbinv::simd
