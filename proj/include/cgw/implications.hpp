#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgw/sets.hpp"

namespace cgw {

// premise -> conclusion: the conclusion lies in the closure of the premise.
struct Implication {
  SubsetMask premise;
  SubsetMask conclusion;

  friend auto operator<=>(const Implication&, const Implication&) = default;
};

// "ab->c"
std::string format_implication(const Implication& imp);

struct ImplicationBasis {
  GroundSet ground;
  std::vector<Implication> rules;  // sorted by premise, then conclusion
};

bool implication_holds(const ConvexGeometry& g, const Implication& imp);

// Drops exact duplicates, then every rule A->B for which another rule C->D
// has C within A and B within D. Output sorted by (premise, conclusion).
std::vector<Implication> reduce_pairwise(std::vector<Implication> rules);

// A -> closure(A) \ A for every nonempty non-closed A, pairwise reduced.
ImplicationBasis generate_basis(const ConvexGeometry& g);

// All subsets W with: premise within W implies conclusion within W.
FamilyMask alignment_from_implications(const ImplicationBasis& basis);

// A premise with a single conclusion element.
struct UnitImplication {
  SubsetMask premise;
  Element conclusion;

  friend auto operator<=>(const UnitImplication&, const UnitImplication&) = default;
};

std::string format_implication(const UnitImplication& imp);

// premise -> u is tight when no premise with one element removed still
// implies u. Throws PreconditionError if premise -> u does not hold or u is
// in the premise.
bool is_tight(const ConvexGeometry& g, SubsetMask premise, Element u);

// All tight (Y, u) with u in closure(Y) \ Y, optionally restricted to
// |Y| = premise_size, sorted by (premise, u).
std::vector<UnitImplication> tight_implications(
    const ConvexGeometry& g, std::optional<int> premise_size = std::nullopt);

}  // namespace cgw
