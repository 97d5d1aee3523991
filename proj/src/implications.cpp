#include "cgw/implications.hpp"

#include <algorithm>

#include "cgw/errors.hpp"

namespace cgw {

std::string format_implication(const Implication& imp) {
  return subset_display(imp.premise) + "->" + subset_display(imp.conclusion);
}

std::string format_implication(const UnitImplication& imp) {
  return subset_display(imp.premise) + "->" + GroundSet::label(imp.conclusion);
}

bool implication_holds(const ConvexGeometry& g, const Implication& imp) {
  check_subset(imp.premise, g.ground());
  check_subset(imp.conclusion, g.ground());
  return imp.conclusion.subset_of(g.closure(imp.premise));
}

std::vector<Implication> reduce_pairwise(std::vector<Implication> rules) {
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  // Subsumption between distinct rules is a strict partial order, so the
  // rules no other rule subsumes are exactly the survivors.
  std::vector<Implication> out;
  for (const Implication& r : rules) {
    const bool redundant = std::any_of(rules.begin(), rules.end(), [&](const Implication& o) {
      return o != r && o.premise.subset_of(r.premise) &&
             r.conclusion.subset_of(o.conclusion);
    });
    if (!redundant) out.push_back(r);
  }
  return out;
}

ImplicationBasis generate_basis(const ConvexGeometry& g) {
  std::vector<Implication> candidates;
  for (std::uint32_t a = 1; a < g.ground().subset_count(); ++a) {
    const SubsetMask premise(a);
    const SubsetMask closed = g.closure(premise);
    if (closed != premise) candidates.push_back({premise, closed - premise});
  }
  return {g.ground(), reduce_pairwise(std::move(candidates))};
}

FamilyMask alignment_from_implications(const ImplicationBasis& basis) {
  FamilyMask out;
  for (std::uint32_t w = 0; w < basis.ground.subset_count(); ++w) {
    const SubsetMask set(w);
    const bool respects = std::all_of(
        basis.rules.begin(), basis.rules.end(), [&](const Implication& r) {
          return !r.premise.subset_of(set) || r.conclusion.subset_of(set);
        });
    if (respects) out = out.with(set);
  }
  return out;
}

namespace {

bool tight_unchecked(const ConvexGeometry& g, SubsetMask premise, Element u) {
  for (Element z : premise.elements()) {
    if (g.closure(premise.without(z)).contains(u)) return false;
  }
  return true;
}

}  // namespace

bool is_tight(const ConvexGeometry& g, SubsetMask premise, Element u) {
  check_subset(premise, g.ground());
  if (u < 0 || u >= g.ground().size()) throw InputError("element out of range");
  if (premise.contains(u)) {
    throw PreconditionError("tightness needs the conclusion outside the premise");
  }
  if (!g.closure(premise).contains(u)) {
    throw PreconditionError("implication " +
                            format_implication(UnitImplication{premise, u}) +
                            " does not hold");
  }
  return tight_unchecked(g, premise, u);
}

std::vector<UnitImplication> tight_implications(const ConvexGeometry& g,
                                                std::optional<int> premise_size) {
  std::vector<UnitImplication> out;
  for (std::uint32_t y = 1; y < g.ground().subset_count(); ++y) {
    const SubsetMask premise(y);
    if (premise_size && premise.size() != *premise_size) continue;
    for (Element u : (g.closure(premise) - premise).elements()) {
      if (tight_unchecked(g, premise, u)) out.push_back({premise, u});
    }
  }
  return out;
}

}  // namespace cgw
