#pragma once

// Subsets and families of subsets of a small ground set, encoded as bitmasks.
//
// Element i carries the label 'a' + i and occupies bit i of a SubsetMask.
// A family of subsets is a FamilyMask whose bit k is set iff the subset with
// mask value k belongs to the family; for five elements this is exactly a
// 32-bit word.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cgw {

using Element = int;

inline constexpr int kMaxElements = 5;

class GroundSet {
 public:
  // Throws InputError unless 1 <= n <= kMaxElements.
  explicit GroundSet(int n);

  int size() const { return n_; }
  std::uint32_t full_bits() const { return (1u << n_) - 1u; }
  std::uint32_t subset_count() const { return 1u << n_; }
  // Bits valid for a FamilyMask over this ground set.
  std::uint32_t family_bits() const {
    return subset_count() == 32 ? 0xffffffffu : (1u << subset_count()) - 1u;
  }

  static char label(Element e) { return static_cast<char>('a' + e); }
  // Throws InputError for labels outside this ground set.
  Element index_of(char label) const;

  friend bool operator==(GroundSet, GroundSet) = default;

 private:
  int n_;
};

class SubsetMask {
 public:
  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint32_t bits) : bits_(bits) {}
  static constexpr SubsetMask single(Element e) { return SubsetMask(1u << e); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(Element e) const { return (bits_ >> e) & 1u; }
  constexpr bool subset_of(SubsetMask other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr SubsetMask with(Element e) const { return SubsetMask(bits_ | (1u << e)); }
  constexpr SubsetMask without(Element e) const {
    return SubsetMask(bits_ & ~(1u << e));
  }

  friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ & b.bits_);
  }
  friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ | b.bits_);
  }
  // Set difference.
  friend constexpr SubsetMask operator-(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ & ~b.bits_);
  }
  friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;

  std::vector<Element> elements() const;

 private:
  std::uint32_t bits_ = 0;
};

class FamilyMask {
 public:
  constexpr FamilyMask() = default;
  constexpr explicit FamilyMask(std::uint32_t bits) : bits_(bits) {}

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(SubsetMask s) const { return (bits_ >> s.bits()) & 1u; }
  constexpr FamilyMask with(SubsetMask s) const {
    return FamilyMask(bits_ | (1u << s.bits()));
  }
  constexpr FamilyMask without(SubsetMask s) const {
    return FamilyMask(bits_ & ~(1u << s.bits()));
  }
  // Members in increasing mask order.
  std::vector<SubsetMask> members() const;

  friend constexpr auto operator<=>(FamilyMask, FamilyMask) = default;

 private:
  std::uint32_t bits_ = 0;
};

// "abd" -> {a,b,d}. Accepts "", "{}" and "∅" for the empty set; commas,
// braces and spaces are ignored. Throws InputError for unknown labels.
SubsetMask subset_encode(std::string_view labels, GroundSet ground);
// Letters in element order; the empty set decodes to "".
std::string subset_decode(SubsetMask s);
// Like subset_decode but renders the empty set as "∅".
std::string subset_display(SubsetMask s);

// Throws InputError if any subset lies outside the ground set.
FamilyMask family_encode(const std::vector<SubsetMask>& subsets, GroundSet ground);

// Validates that mask only uses bits of the ground set's family range.
void check_family(FamilyMask f, GroundSet ground);
void check_subset(SubsetMask s, GroundSet ground);

// Smallest n such that the family's top bit is the full set of n elements.
// Throws InputError if the mask does not contain a full set on 1..5 elements.
GroundSet infer_ground(FamilyMask f);

bool is_intersection_closed(FamilyMask f);
bool is_union_closed(FamilyMask f);

// Intersection of all members containing y (the full set if none is listed).
SubsetMask family_closure(FamilyMask f, GroundSet ground, SubsetMask y);

// The closed-set family of a convex geometry, with a precomputed closure
// table. Construct via from_family, which validates the axioms.
class ConvexGeometry {
 public:
  // Throws InputError if f is not a convex geometry on ground.
  static ConvexGeometry from_family(GroundSet ground, FamilyMask f);

  GroundSet ground() const { return ground_; }
  FamilyMask family() const { return family_; }
  SubsetMask full() const { return SubsetMask(ground_.full_bits()); }
  SubsetMask closure(SubsetMask y) const {
    return SubsetMask(closure_[y.bits() & ground_.full_bits()]);
  }
  bool is_closed(SubsetMask y) const { return family_.contains(y); }

 private:
  ConvexGeometry(GroundSet ground, FamilyMask f);

  GroundSet ground_;
  FamilyMask family_;
  std::array<std::uint8_t, 32> closure_{};
};

SubsetMask closure(const ConvexGeometry& g, SubsetMask y);

// Contains the empty and full sets, intersection-closed, and every member
// other than the full set has a one-element extension in the family.
bool is_convex_geometry(FamilyMask f, GroundSet ground);

// Requires f to be an alignment (full set present, intersection-closed);
// throws InputError otherwise. Checks closure(empty) = empty and the
// anti-exchange axiom over all closed Y and distinct x, y outside Y.
bool anti_exchange_holds(FamilyMask f, GroundSet ground);

// Union-closed, contains the empty and full sets, and every nonempty member
// has an element whose removal stays in the family.
bool is_antimatroid(FamilyMask f, GroundSet ground);

// Family of complements; an involution mapping convex geometries to
// antimatroids and back.
FamilyMask complement_family(FamilyMask f, GroundSet ground);

// perm[i] is the image of element i.
using Permutation = std::array<Element, kMaxElements>;

Permutation identity_permutation();
// All n! permutations of the ground set, lexicographic, identity first.
const std::vector<Permutation>& all_permutations(GroundSet ground);

SubsetMask permute_subset(SubsetMask s, const Permutation& perm);
FamilyMask permute_family(FamilyMask f, const Permutation& perm);

// Minimum family mask over all relabelings of the ground set.
FamilyMask canonical_form(FamilyMask f, GroundSet ground);

// Some perm with permute_family(from, perm) == to, if the families are
// isomorphic.
std::optional<Permutation> find_isomorphism(FamilyMask from, FamilyMask to,
                                            GroundSet ground);

// Every convex geometry on the ground set, labeled (not reduced by
// isomorphism), in increasing mask order.
std::vector<FamilyMask> enumerate_labeled_geometries(GroundSet ground);

// One canonical representative per isomorphism class, ordered by member
// count and then mask value.
std::vector<FamilyMask> enumerate_geometries(GroundSet ground);

}  // namespace cgw
