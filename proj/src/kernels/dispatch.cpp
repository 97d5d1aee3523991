#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "cgw/kernels.hpp"

namespace cgw::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(CGW_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend detect() {
  const char* env = std::getenv("CGW_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Backend::kScalar;
  return cpu_has_avx2() ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) {
  return b == Backend::kScalar || cpu_has_avx2();
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument(std::string("kernel backend unavailable: ") +
                                backend_name(b));
  }
  current().store(b, std::memory_order_relaxed);
}

std::uint32_t min_permuted_family(std::uint32_t family,
                                  std::span<const SubsetPermTable> tables) {
#if defined(CGW_HAVE_AVX2)
  if (active_backend() == Backend::kAvx2) {
    return avx2::min_permuted_family(family, tables);
  }
#endif
  return scalar::min_permuted_family(family, tables);
}

bool intersection_closed(std::uint32_t family) {
#if defined(CGW_HAVE_AVX2)
  if (active_backend() == Backend::kAvx2) return avx2::intersection_closed(family);
#endif
  return scalar::intersection_closed(family);
}

SampledGap sampled_envelope_gap(DiskArrays hull, Disk e,
                                std::span<const double> cos_t,
                                std::span<const double> sin_t) {
#if defined(CGW_HAVE_AVX2)
  if (active_backend() == Backend::kAvx2) {
    return avx2::sampled_envelope_gap(hull, e, cos_t, sin_t);
  }
#endif
  return scalar::sampled_envelope_gap(hull, e, cos_t, sin_t);
}

}  // namespace cgw::kernels
