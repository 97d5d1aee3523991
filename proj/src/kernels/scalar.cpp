#include <algorithm>
#include <bit>
#include <limits>

#include "cgw/kernels.hpp"

namespace cgw::kernels::scalar {

std::uint32_t min_permuted_family(std::uint32_t family,
                                  std::span<const SubsetPermTable> tables) {
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  for (const auto& table : tables) {
    std::uint32_t out = 0;
    for (std::uint32_t rest = family; rest != 0; rest &= rest - 1) {
      const int k = std::countr_zero(rest);
      out |= 1u << table[k];
    }
    best = std::min(best, out);
  }
  return best;
}

bool intersection_closed(std::uint32_t family) {
  for (std::uint32_t a = family; a != 0; a &= a - 1) {
    const unsigned i = static_cast<unsigned>(std::countr_zero(a));
    for (std::uint32_t b = a & (a - 1); b != 0; b &= b - 1) {
      const unsigned j = static_cast<unsigned>(std::countr_zero(b));
      if (((family >> (i & j)) & 1u) == 0) return false;
    }
  }
  return true;
}

SampledGap sampled_envelope_gap(DiskArrays hull, Disk e,
                                std::span<const double> cos_t,
                                std::span<const double> sin_t) {
  SampledGap best{std::numeric_limits<double>::infinity(), 0};
  const std::size_t m = hull.cx.size();
  for (std::size_t k = 0; k < cos_t.size(); ++k) {
    const double c = cos_t[k];
    const double s = sin_t[k];
    double env = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      env = std::max(env, hull.cx[i] * c + hull.cy[i] * s + hull.r[i]);
    }
    const double gap = env - (e.cx * c + e.cy * s + e.r);
    if (gap < best.gap) best = {gap, k};
  }
  return best;
}

}  // namespace cgw::kernels::scalar
