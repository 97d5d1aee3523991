#include "cgw/sets.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cgw/errors.hpp"
#include "cgw/kernels.hpp"

namespace cgw {

GroundSet::GroundSet(int n) : n_(n) {
  if (n < 1 || n > kMaxElements) {
    throw InputError("ground set size must be in 1..5, got " + std::to_string(n));
  }
}

Element GroundSet::index_of(char label) const {
  const int i = label - 'a';
  if (i < 0 || i >= n_) {
    throw InputError(std::string("unknown element label '") + label + "'");
  }
  return i;
}

std::vector<Element> SubsetMask::elements() const {
  std::vector<Element> out;
  for (std::uint32_t rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest));
  }
  return out;
}

std::vector<SubsetMask> FamilyMask::members() const {
  std::vector<SubsetMask> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint32_t rest = bits_; rest != 0; rest &= rest - 1) {
    out.emplace_back(static_cast<std::uint32_t>(std::countr_zero(rest)));
  }
  return out;
}

SubsetMask subset_encode(std::string_view labels, GroundSet ground) {
  if (labels == "\xE2\x88\x85") return SubsetMask();  // ∅
  SubsetMask s;
  for (char ch : labels) {
    if (ch == ',' || ch == ' ' || ch == '{' || ch == '}') continue;
    s = s.with(ground.index_of(ch));
  }
  return s;
}

std::string subset_decode(SubsetMask s) {
  std::string out;
  for (Element e : s.elements()) out.push_back(GroundSet::label(e));
  return out;
}

std::string subset_display(SubsetMask s) {
  return s.empty() ? std::string("\xE2\x88\x85") : subset_decode(s);
}

void check_subset(SubsetMask s, GroundSet ground) {
  if ((s.bits() & ~ground.full_bits()) != 0) {
    throw InputError("subset mask " + std::to_string(s.bits()) +
                     " outside ground set of size " + std::to_string(ground.size()));
  }
}

void check_family(FamilyMask f, GroundSet ground) {
  if ((f.bits() & ~ground.family_bits()) != 0) {
    throw InputError("family mask " + std::to_string(f.bits()) +
                     " outside ground set of size " + std::to_string(ground.size()));
  }
}

FamilyMask family_encode(const std::vector<SubsetMask>& subsets, GroundSet ground) {
  FamilyMask f;
  for (SubsetMask s : subsets) {
    check_subset(s, ground);
    f = f.with(s);
  }
  return f;
}

GroundSet infer_ground(FamilyMask f) {
  if (f.bits() == 0) throw InputError("empty family mask");
  const int top = 31 - std::countl_zero(f.bits());
  for (int n = 1; n <= kMaxElements; ++n) {
    if (top == (1 << n) - 1) return GroundSet(n);
  }
  throw InputError("family mask " + std::to_string(f.bits()) +
                   " does not contain a full set of 1..5 elements");
}

bool is_intersection_closed(FamilyMask f) {
  return kernels::intersection_closed(f.bits());
}

bool is_union_closed(FamilyMask f) {
  const auto members = f.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (!f.contains(members[i] | members[j])) return false;
    }
  }
  return true;
}

SubsetMask family_closure(FamilyMask f, GroundSet ground, SubsetMask y) {
  std::uint32_t acc = ground.full_bits();
  for (SubsetMask z : f.members()) {
    if (y.subset_of(z)) acc &= z.bits();
  }
  return SubsetMask(acc);
}

ConvexGeometry::ConvexGeometry(GroundSet ground, FamilyMask f)
    : ground_(ground), family_(f) {
  const auto members = f.members();
  for (std::uint32_t y = 0; y < ground.subset_count(); ++y) {
    std::uint32_t acc = ground.full_bits();
    for (SubsetMask z : members) {
      if ((y & ~z.bits()) == 0) acc &= z.bits();
    }
    closure_[y] = static_cast<std::uint8_t>(acc);
  }
}

ConvexGeometry ConvexGeometry::from_family(GroundSet ground, FamilyMask f) {
  if (!is_convex_geometry(f, ground)) {
    throw InputError("family mask " + std::to_string(f.bits()) +
                     " is not a convex geometry on " + std::to_string(ground.size()) +
                     " elements");
  }
  return ConvexGeometry(ground, f);
}

SubsetMask closure(const ConvexGeometry& g, SubsetMask y) {
  check_subset(y, g.ground());
  return g.closure(y);
}

bool is_convex_geometry(FamilyMask f, GroundSet ground) {
  if ((f.bits() & ~ground.family_bits()) != 0) return false;
  const SubsetMask full(ground.full_bits());
  if (!f.contains(SubsetMask()) || !f.contains(full)) return false;
  if (!is_intersection_closed(f)) return false;
  for (SubsetMask y : f.members()) {
    if (y == full) continue;
    bool extends = false;
    for (Element a = 0; a < ground.size() && !extends; ++a) {
      extends = !y.contains(a) && f.contains(y.with(a));
    }
    if (!extends) return false;
  }
  return true;
}

bool anti_exchange_holds(FamilyMask f, GroundSet ground) {
  check_family(f, ground);
  const SubsetMask full(ground.full_bits());
  if (!f.contains(full) || !is_intersection_closed(f)) {
    throw InputError("anti-exchange check needs an alignment (full set present, "
                     "intersection-closed)");
  }
  auto phi = [&](SubsetMask y) { return family_closure(f, ground, y); };
  if (!phi(SubsetMask()).empty()) return false;
  for (SubsetMask y : f.members()) {
    for (Element x = 0; x < ground.size(); ++x) {
      if (y.contains(x)) continue;
      const SubsetMask yx = phi(y.with(x));
      for (Element z = 0; z < ground.size(); ++z) {
        if (z == x || y.contains(z)) continue;
        if (yx.contains(z) && phi(y.with(z)).contains(x)) return false;
      }
    }
  }
  return true;
}

bool is_antimatroid(FamilyMask f, GroundSet ground) {
  if ((f.bits() & ~ground.family_bits()) != 0) return false;
  if (!f.contains(SubsetMask()) || !f.contains(SubsetMask(ground.full_bits()))) {
    return false;
  }
  if (!is_union_closed(f)) return false;
  for (SubsetMask y : f.members()) {
    if (y.empty()) continue;
    bool accessible = false;
    for (Element x : y.elements()) {
      if (f.contains(y.without(x))) {
        accessible = true;
        break;
      }
    }
    if (!accessible) return false;
  }
  return true;
}

FamilyMask complement_family(FamilyMask f, GroundSet ground) {
  check_family(f, ground);
  const std::uint32_t full = ground.full_bits();
  FamilyMask out;
  for (SubsetMask y : f.members()) out = out.with(SubsetMask(full & ~y.bits()));
  return out;
}

Permutation identity_permutation() {
  Permutation p{};
  std::iota(p.begin(), p.end(), 0);
  return p;
}

namespace {

std::vector<Permutation> make_permutations(int n) {
  std::vector<Element> prefix(static_cast<std::size_t>(n));
  std::iota(prefix.begin(), prefix.end(), 0);
  std::vector<Permutation> out;
  do {
    Permutation p = identity_permutation();
    std::copy(prefix.begin(), prefix.end(), p.begin());
    out.push_back(p);
  } while (std::next_permutation(prefix.begin(), prefix.end()));
  return out;
}

struct PermutationTables {
  std::vector<Permutation> perms;
  std::vector<kernels::SubsetPermTable> subset_tables;
};

const PermutationTables& tables_for(GroundSet ground) {
  static const auto all = [] {
    std::array<PermutationTables, kMaxElements + 1> t;
    for (int n = 1; n <= kMaxElements; ++n) {
      t[n].perms = make_permutations(n);
      for (const Permutation& p : t[n].perms) {
        kernels::SubsetPermTable table{};
        for (std::uint32_t k = 0; k < 32; ++k) {
          table[k] = static_cast<std::uint8_t>(
              k < (1u << n) ? permute_subset(SubsetMask(k), p).bits() : k);
        }
        t[n].subset_tables.push_back(table);
      }
    }
    return t;
  }();
  return all[ground.size()];
}

}  // namespace

const std::vector<Permutation>& all_permutations(GroundSet ground) {
  return tables_for(ground).perms;
}

SubsetMask permute_subset(SubsetMask s, const Permutation& perm) {
  std::uint32_t out = 0;
  for (Element e : s.elements()) out |= 1u << perm[e];
  return SubsetMask(out);
}

FamilyMask permute_family(FamilyMask f, const Permutation& perm) {
  FamilyMask out;
  for (SubsetMask s : f.members()) out = out.with(permute_subset(s, perm));
  return out;
}

FamilyMask canonical_form(FamilyMask f, GroundSet ground) {
  check_family(f, ground);
  return FamilyMask(
      kernels::min_permuted_family(f.bits(), tables_for(ground).subset_tables));
}

std::optional<Permutation> find_isomorphism(FamilyMask from, FamilyMask to,
                                            GroundSet ground) {
  if (from.size() != to.size()) return std::nullopt;
  for (const Permutation& p : all_permutations(ground)) {
    if (permute_family(from, p) == to) return p;
  }
  return std::nullopt;
}

namespace {

// Decides membership subset by subset, larger subsets first. When a subset
// is taken, its one-element extensions have already been decided (so the
// extension axiom is checked on the spot) and its intersections with the
// members taken so far are strictly smaller, so they are recorded as
// forced. A forced subset can never be skipped.
class LabeledEnumerator {
 public:
  explicit LabeledEnumerator(GroundSet ground) : ground_(ground) {
    for (std::uint32_t s = 0; s < ground.subset_count(); ++s) order_.push_back(s);
    std::stable_sort(order_.begin(), order_.end(), [](std::uint32_t a, std::uint32_t b) {
      return std::popcount(a) > std::popcount(b);
    });
  }

  std::vector<FamilyMask> run() {
    const std::uint32_t forced = 1u | (1u << ground_.full_bits());
    descend(0, 0, forced);
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  void descend(std::size_t pos, std::uint32_t family, std::uint32_t forced) {
    if (pos == order_.size()) {
      out_.emplace_back(family);
      return;
    }
    const std::uint32_t s = order_[pos];
    const std::uint32_t bit = 1u << s;
    if (can_take(s, family)) {
      std::uint32_t next_forced = forced;
      for (std::uint32_t rest = family; rest != 0; rest &= rest - 1) {
        const auto t = static_cast<std::uint32_t>(std::countr_zero(rest));
        next_forced |= 1u << (s & t);
      }
      descend(pos + 1, family | bit, next_forced);
    }
    if ((forced & bit) == 0) descend(pos + 1, family, forced);
  }

  bool can_take(std::uint32_t s, std::uint32_t family) const {
    if (s == ground_.full_bits()) return true;
    for (Element a = 0; a < ground_.size(); ++a) {
      const std::uint32_t ext = s | (1u << a);
      if (ext != s && ((family >> ext) & 1u)) return true;
    }
    return false;
  }

  GroundSet ground_;
  std::vector<std::uint32_t> order_;
  std::vector<FamilyMask> out_;
};

}  // namespace

std::vector<FamilyMask> enumerate_labeled_geometries(GroundSet ground) {
  return LabeledEnumerator(ground).run();
}

std::vector<FamilyMask> enumerate_geometries(GroundSet ground) {
  std::set<FamilyMask> classes;
  for (FamilyMask f : enumerate_labeled_geometries(ground)) {
    classes.insert(canonical_form(f, ground));
  }
  std::vector<FamilyMask> out(classes.begin(), classes.end());
  std::stable_sort(out.begin(), out.end(), [](FamilyMask a, FamilyMask b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace cgw
