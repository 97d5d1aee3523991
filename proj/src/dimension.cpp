#include "cgw/dimension.hpp"

#include <algorithm>

#include "cgw/errors.hpp"

namespace cgw {

Poset::Poset(std::vector<SubsetMask> elements) : elements_(std::move(elements)) {
  auto sorted = elements_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("poset elements must be distinct");
  }
}

bool Poset::less(std::size_t i, std::size_t j) const {
  return elements_[i] != elements_[j] && elements_[i].subset_of(elements_[j]);
}

std::vector<SubsetMask> upper_covers(const ConvexGeometry& g, SubsetMask y) {
  check_subset(y, g.ground());
  if (!g.is_closed(y)) {
    throw InputError("upper covers need a closed set, got " + subset_display(y));
  }
  std::vector<SubsetMask> out;
  for (Element a = 0; a < g.ground().size(); ++a) {
    if (!y.contains(a) && g.is_closed(y.with(a))) out.push_back(y.with(a));
  }
  return out;
}

std::vector<SubsetMask> meet_irreducibles(const ConvexGeometry& g) {
  std::vector<SubsetMask> out;
  for (SubsetMask y : g.family().members()) {
    if (y != g.full() && upper_covers(g, y).size() == 1) out.push_back(y);
  }
  return out;
}

namespace {

// Kuhn's augmenting paths; left vertex i may match right vertex j iff
// p.less(i, j).
class ChainMatcher {
 public:
  explicit ChainMatcher(const Poset& p)
      : p_(p), match_right_(p.size(), kUnmatched), seen_(p.size(), false) {}

  int run() {
    int matched = 0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
      std::fill(seen_.begin(), seen_.end(), false);
      if (augment(i)) ++matched;
    }
    return matched;
  }

 private:
  static constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

  bool augment(std::size_t i) {
    for (std::size_t j = 0; j < p_.size(); ++j) {
      if (!p_.less(i, j) || seen_[j]) continue;
      seen_[j] = true;
      if (match_right_[j] == kUnmatched || augment(match_right_[j])) {
        match_right_[j] = i;
        return true;
      }
    }
    return false;
  }

  const Poset& p_;
  std::vector<std::size_t> match_right_;
  std::vector<bool> seen_;
};

}  // namespace

int max_antichain_size(const Poset& p) {
  return static_cast<int>(p.size()) - ChainMatcher(p).run();
}

int convex_dimension(const ConvexGeometry& g) {
  return max_antichain_size(Poset(meet_irreducibles(g)));
}

}  // namespace cgw
