#include <doctest.h>

#include "cgw/errors.hpp"
#include "cgw/implications.hpp"
#include "oracles.hpp"

using namespace cgw;

namespace {

const GroundSet k2(2);
const GroundSet k3(3);

SubsetMask s3(const char* labels) { return subset_encode(labels, k3); }

Implication imp(const char* p, const char* c, GroundSet g = k3) {
  return {subset_encode(p, g), subset_encode(c, g)};
}

ConvexGeometry paper_family() { return ConvexGeometry::from_family(k3, FamilyMask(139)); }

// {empty, a, b, c, ab, bc, abc}: three points on a line with b in the middle.
ConvexGeometry collinear_points() {
  std::vector<SubsetMask> members;
  for (const char* s : {"", "a", "b", "c", "ab", "bc", "abc"}) members.push_back(s3(s));
  return ConvexGeometry::from_family(k3, family_encode(members, k3));
}

}  // namespace

TEST_CASE("implication_holds") {
  const auto g = paper_family();
  CHECK(implication_holds(g, imp("b", "a")));
  CHECK_FALSE(implication_holds(g, imp("a", "b")));
  CHECK(implication_holds(g, imp("abc", "abc")));
}

TEST_CASE("generate_basis") {
  const auto basis = generate_basis(paper_family());
  CHECK(basis.rules == std::vector{imp("b", "a"), imp("c", "ab")});
  CHECK(generate_basis(ConvexGeometry::from_family(k3, FamilyMask(255))).rules.empty());
  const auto chain = generate_basis(ConvexGeometry::from_family(k2, FamilyMask(11)));
  CHECK(chain.rules == std::vector{imp("b", "a", k2)});
}

TEST_CASE("reduce_pairwise") {
  CHECK(reduce_pairwise({imp("a", "c"), imp("ab", "c")}) == std::vector{imp("a", "c")});
  CHECK(reduce_pairwise({}).empty());
  CHECK(reduce_pairwise({imp("a", "b"), imp("a", "bc")}) == std::vector{imp("a", "bc")});
}

TEST_CASE("alignment_from_implications") {
  CHECK(alignment_from_implications({k2, {imp("b", "a", k2)}}).bits() == 11);
  CHECK(alignment_from_implications({k3, {}}).bits() == 255);
  CHECK(alignment_from_implications(generate_basis(paper_family())).bits() == 139);
}

TEST_CASE("basis round trip on every labeled geometry up to n = 4") {
  for (int n = 1; n <= 4; ++n) {
    for (FamilyMask f : enumerate_labeled_geometries(GroundSet(n))) {
      const auto g = ConvexGeometry::from_family(GroundSet(n), f);
      const auto basis = generate_basis(g);
      CHECK(alignment_from_implications(basis) == f);
      for (const Implication& r : basis.rules) {
        CHECK(implication_holds(g, r));
        CHECK((r.premise & r.conclusion).empty());
      }
    }
  }
}

TEST_CASE("tightness") {
  CHECK(is_tight(paper_family(), s3("b"), 0));
  CHECK_FALSE(is_tight(paper_family(), s3("bc"), 0));
  CHECK(is_tight(collinear_points(), s3("ac"), 1));
  CHECK_THROWS_AS(is_tight(paper_family(), s3("a"), 1), PreconditionError);
}

TEST_CASE("tight_implications") {
  CHECK(tight_implications(ConvexGeometry::from_family(k3, FamilyMask(255))).empty());
  const auto list = tight_implications(paper_family());
  const std::vector<UnitImplication> expected{
      {s3("b"), 0}, {s3("c"), 0}, {s3("c"), 1}};
  CHECK(list == expected);
  const auto pairs = tight_implications(collinear_points(), 2);
  CHECK(pairs == std::vector<UnitImplication>{{s3("ac"), 1}});
}

TEST_CASE("tight_implications agrees with the oracle on n = 4") {
  for (FamilyMask f : enumerate_labeled_geometries(GroundSet(4))) {
    const auto g = ConvexGeometry::from_family(GroundSet(4), f);
    std::vector<UnitImplication> expected;
    for (std::uint32_t y = 1; y < 16; ++y) {
      for (int u = 0; u < 4; ++u) {
        if (oracle::tight(f.bits(), 4, y, u)) expected.push_back({SubsetMask(y), u});
      }
    }
    auto got = tight_implications(g);
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);
  }
}

TEST_CASE("formatting") {
  CHECK(format_implication(imp("c", "ab")) == "c->ab");
  CHECK(format_implication(UnitImplication{s3("ab"), 2}) == "ab->c");
}
