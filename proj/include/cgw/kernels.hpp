#pragma once

// Data-parallel inner loops with a scalar reference implementation and an
// AVX2 variant. The public entry points dispatch at runtime to the best
// backend the CPU supports; the per-backend namespaces are exposed so the
// variants can be tested against each other.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace cgw::kernels {

enum class Backend { kScalar, kAvx2 };

const char* backend_name(Backend b);
bool backend_available(Backend b);

// Backend chosen on first use: AVX2 when the CPU has it, unless the
// environment variable CGW_KERNELS=scalar is set.
Backend active_backend();

// Overrides the dispatch target; throws std::invalid_argument if the
// backend is not available on this CPU.
void force_backend(Backend b);

// Maps subset index k (bit k of a family mask) to its image under an
// element relabeling. Entries at or beyond the ground set's subset count
// must be identity.
using SubsetPermTable = std::array<std::uint8_t, 32>;

// Minimum over all tables of the family mask obtained by moving bit k to
// bit table[k].
std::uint32_t min_permuted_family(std::uint32_t family,
                                  std::span<const SubsetPermTable> tables);

// True iff the intersection of any two member subsets is a member.
bool intersection_closed(std::uint32_t family);

// Structure-of-arrays view of a set of disks.
struct DiskArrays {
  std::span<const double> cx;
  std::span<const double> cy;
  std::span<const double> r;
};

struct Disk {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;
};

struct SampledGap {
  double gap;          // min over samples of (max_i h_i - h_e)
  std::size_t index;   // sample achieving the minimum (first on ties)
};

// Evaluates the support-function envelope of `hull` against the disk `e`
// at the given unit directions (cos_t[k], sin_t[k]).
SampledGap sampled_envelope_gap(DiskArrays hull, Disk e,
                                std::span<const double> cos_t,
                                std::span<const double> sin_t);

namespace scalar {
std::uint32_t min_permuted_family(std::uint32_t family,
                                  std::span<const SubsetPermTable> tables);
bool intersection_closed(std::uint32_t family);
SampledGap sampled_envelope_gap(DiskArrays hull, Disk e,
                                std::span<const double> cos_t,
                                std::span<const double> sin_t);
}  // namespace scalar

#if defined(CGW_HAVE_AVX2)
namespace avx2 {
std::uint32_t min_permuted_family(std::uint32_t family,
                                  std::span<const SubsetPermTable> tables);
bool intersection_closed(std::uint32_t family);
SampledGap sampled_envelope_gap(DiskArrays hull, Disk e,
                                std::span<const double> cos_t,
                                std::span<const double> sin_t);
}  // namespace avx2
#endif

}  // namespace cgw::kernels
