#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cgw/kernels.hpp"
#include "cgw/sets.hpp"

using namespace cgw;
namespace k = cgw::kernels;

namespace {

std::vector<k::SubsetPermTable> tables_for(GroundSet g) {
  std::vector<k::SubsetPermTable> out;
  for (const Permutation& p : all_permutations(g)) {
    k::SubsetPermTable t{};
    for (std::uint32_t s = 0; s < g.subset_count(); ++s) {
      t[s] = static_cast<std::uint8_t>(permute_subset(SubsetMask(s), p).bits());
    }
    out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(k::backend_available(k::Backend::kScalar));
  CHECK(std::string(k::backend_name(k::Backend::kScalar)) == "scalar");
}

#if defined(CGW_HAVE_AVX2)

TEST_CASE("avx2 min_permuted_family equals scalar") {
  if (!k::backend_available(k::Backend::kAvx2)) return;
  std::mt19937 rng(17);
  for (int n = 1; n <= 5; ++n) {
    const GroundSet g(n);
    const auto tables = tables_for(g);
    for (int i = 0; i < 2000; ++i) {
      const std::uint32_t f = static_cast<std::uint32_t>(rng()) & g.family_bits();
      // Uneven tails exercise the partial final block.
      const std::size_t len = 1 + rng() % tables.size();
      const std::span<const k::SubsetPermTable> part(tables.data(), len);
      CHECK(k::avx2::min_permuted_family(f, part) == k::scalar::min_permuted_family(f, part));
    }
  }
}

TEST_CASE("avx2 intersection_closed equals scalar") {
  if (!k::backend_available(k::Backend::kAvx2)) return;
  std::mt19937 rng(19);
  for (std::uint32_t f = 0; f < (1u << 16); ++f) {
    REQUIRE(k::avx2::intersection_closed(f) == k::scalar::intersection_closed(f));
  }
  for (int i = 0; i < 100000; ++i) {
    // Sparse families are the ones likely to be intersection closed.
    std::uint32_t f = static_cast<std::uint32_t>(rng()) & static_cast<std::uint32_t>(rng()) &
                      static_cast<std::uint32_t>(rng());
    f |= 1u;
    REQUIRE(k::avx2::intersection_closed(f) == k::scalar::intersection_closed(f));
  }
  for (FamilyMask f : enumerate_labeled_geometries(GroundSet(4))) {
    CHECK(k::avx2::intersection_closed(f.bits()));
  }
}

TEST_CASE("avx2 sampled_envelope_gap is bit-identical to scalar") {
  if (!k::backend_available(k::Backend::kAvx2)) return;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int samples : {1, 3, 4, 7, 64, 4096}) {
    std::vector<double> cs, sn;
    for (int i = 0; i < samples; ++i) {
      const double t = 2.0 * std::numbers::pi * i / samples;
      cs.push_back(std::cos(t));
      sn.push_back(std::sin(t));
    }
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t count = 1 + rng() % 5;
      std::vector<double> cx, cy, r;
      for (std::size_t i = 0; i < count; ++i) {
        cx.push_back(u(rng));
        cy.push_back(u(rng));
        r.push_back(std::abs(u(rng)));
      }
      const k::DiskArrays hull{cx, cy, r};
      const k::Disk e{u(rng), u(rng), std::abs(u(rng))};
      const auto a = k::scalar::sampled_envelope_gap(hull, e, cs, sn);
      const auto b = k::avx2::sampled_envelope_gap(hull, e, cs, sn);
      CHECK(a.gap == b.gap);
      CHECK(a.index == b.index);
    }
  }
}

TEST_CASE("forcing a backend switches the dispatcher") {
  const k::Backend before = k::active_backend();
  k::force_backend(k::Backend::kScalar);
  CHECK(k::active_backend() == k::Backend::kScalar);
  const auto scalar_list = enumerate_geometries(GroundSet(4));
  if (k::backend_available(k::Backend::kAvx2)) {
    k::force_backend(k::Backend::kAvx2);
    CHECK(k::active_backend() == k::Backend::kAvx2);
    CHECK(enumerate_geometries(GroundSet(4)) == scalar_list);
  }
  k::force_backend(before);
}

#endif
