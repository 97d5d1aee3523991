// Compiled with -mavx2; only called after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "cgw/kernels.hpp"

namespace cgw::kernels::avx2 {

namespace {

inline std::uint32_t hmin_epu32(__m256i v) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  __m128i m = _mm_min_epu32(lo, hi);
  m = _mm_min_epu32(m, _mm_shuffle_epi32(m, _MM_SHUFFLE(1, 0, 3, 2)));
  m = _mm_min_epu32(m, _mm_shuffle_epi32(m, _MM_SHUFFLE(2, 3, 0, 1)));
  return static_cast<std::uint32_t>(_mm_cvtsi128_si32(m));
}

}  // namespace

// Eight relabelings per step: lane p accumulates the image of the family
// under table p, moving bit k with a per-lane variable shift.
std::uint32_t min_permuted_family(std::uint32_t family,
                                  std::span<const SubsetPermTable> tables) {
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  const std::size_t count = tables.size();
  std::size_t p = 0;
  const __m256i one = _mm256_set1_epi32(1);
  for (; p + 8 <= count; p += 8) {
    __m256i acc = _mm256_setzero_si256();
    for (std::uint32_t rest = family; rest != 0; rest &= rest - 1) {
      const int k = __builtin_ctz(rest);
      const __m256i shift = _mm256_setr_epi32(
          tables[p][k], tables[p + 1][k], tables[p + 2][k], tables[p + 3][k],
          tables[p + 4][k], tables[p + 5][k], tables[p + 6][k],
          tables[p + 7][k]);
      acc = _mm256_or_si256(acc, _mm256_sllv_epi32(one, shift));
    }
    best = std::min(best, hmin_epu32(acc));
  }
  if (p < count) {
    best = std::min(best, scalar::min_permuted_family(family, tables.subspan(p)));
  }
  return best;
}

// For member i, tests bit (i & j) of the family for eight member indices j
// at once with a per-lane variable right shift.
bool intersection_closed(std::uint32_t family) {
  alignas(32) std::uint32_t members[32];
  int m = 0;
  for (std::uint32_t rest = family; rest != 0; rest &= rest - 1) {
    members[m++] = static_cast<std::uint32_t>(__builtin_ctz(rest));
  }
  const __m256i fam = _mm256_set1_epi32(static_cast<int>(family));
  const __m256i one = _mm256_set1_epi32(1);
  for (int a = 0; a < m; ++a) {
    const __m256i vi = _mm256_set1_epi32(static_cast<int>(members[a]));
    int b = a + 1;
    for (; b + 8 <= m; b += 8) {
      const __m256i vj = _mm256_loadu_si256(
          reinterpret_cast<const __m256i*>(members + b));
      const __m256i idx = _mm256_and_si256(vi, vj);
      const __m256i bits = _mm256_and_si256(_mm256_srlv_epi32(fam, idx), one);
      if (_mm256_movemask_ps(_mm256_castsi256_ps(
              _mm256_cmpeq_epi32(bits, _mm256_setzero_si256()))) != 0) {
        return false;
      }
    }
    for (; b < m; ++b) {
      if (((family >> (members[a] & members[b])) & 1u) == 0) return false;
    }
  }
  return true;
}

// Four directions per step; the envelope max runs over the hull disks.
SampledGap sampled_envelope_gap(DiskArrays hull, Disk e,
                                std::span<const double> cos_t,
                                std::span<const double> sin_t) {
  SampledGap best{std::numeric_limits<double>::infinity(), 0};
  const std::size_t n = cos_t.size();
  const std::size_t m = hull.cx.size();
  const __m256d ex = _mm256_set1_pd(e.cx);
  const __m256d ey = _mm256_set1_pd(e.cy);
  const __m256d er = _mm256_set1_pd(e.r);
  std::size_t k = 0;
  alignas(32) double gaps[4];
  for (; k + 4 <= n; k += 4) {
    const __m256d c = _mm256_loadu_pd(cos_t.data() + k);
    const __m256d s = _mm256_loadu_pd(sin_t.data() + k);
    __m256d env = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < m; ++i) {
      // Separate mul/add keeps results bit-identical to the scalar loop.
      const __m256d h = _mm256_add_pd(
          _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(hull.cx[i]), c),
                        _mm256_mul_pd(_mm256_set1_pd(hull.cy[i]), s)),
          _mm256_set1_pd(hull.r[i]));
      env = _mm256_max_pd(env, h);
    }
    const __m256d he = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(ex, c), _mm256_mul_pd(ey, s)), er);
    _mm256_store_pd(gaps, _mm256_sub_pd(env, he));
    for (int l = 0; l < 4; ++l) {
      if (gaps[l] < best.gap) best = {gaps[l], k + static_cast<std::size_t>(l)};
    }
  }
  if (k < n) {
    SampledGap tail = scalar::sampled_envelope_gap(hull, e, cos_t.subspan(k),
                                                   sin_t.subspan(k));
    if (tail.gap < best.gap) best = {tail.gap, tail.index + k};
  }
  return best;
}

}  // namespace cgw::kernels::avx2
