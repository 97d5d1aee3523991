#pragma once

#include <vector>

#include "cgw/sets.hpp"

namespace cgw {

// Subsets ordered by inclusion.
class Poset {
 public:
  // Throws InputError on duplicate elements.
  explicit Poset(std::vector<SubsetMask> elements);

  const std::vector<SubsetMask>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  // Strict inclusion of element i in element j.
  bool less(std::size_t i, std::size_t j) const;

 private:
  std::vector<SubsetMask> elements_;
};

// Closed sets Y + {a}, a outside Y. Throws InputError if y is not closed.
std::vector<SubsetMask> upper_covers(const ConvexGeometry& g, SubsetMask y);

// Closed sets other than the full set with exactly one upper cover, in
// increasing mask order.
std::vector<SubsetMask> meet_irreducibles(const ConvexGeometry& g);

// Width of the poset: element count minus a maximum matching in the
// comparability bipartite graph (minimum chain cover, Dilworth).
int max_antichain_size(const Poset& p);

// Width of the meet-irreducible poset.
int convex_dimension(const ConvexGeometry& g);

}  // namespace cgw
