#include "cgw/representation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "cgw/dimension.hpp"
#include "cgw/errors.hpp"

namespace cgw {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kVerified:
      return "verified";
    case Verdict::kFailed:
      return "failed";
    case Verdict::kMarginal:
      return "marginal";
  }
  return "?";
}

namespace {

void require_same_ground(const ConvexGeometry& g, const Configuration& conf) {
  if (g.ground() != conf.ground()) {
    throw InputError("configuration has " + std::to_string(conf.ground().size()) +
                     " circles but the geometry has " +
                     std::to_string(g.ground().size()) + " elements");
  }
}

void append_marginal(std::vector<MarginalPair>& into, const std::vector<MarginalPair>& from) {
  for (const MarginalPair& m : from) {
    if (std::find(into.begin(), into.end(), m) == into.end()) into.push_back(m);
  }
}

// Proposition checks shared by both verifiers. Returns true if all pass.
bool check_rules_and_irreducibles(const ConvexGeometry& g, const ImplicationBasis& basis,
                                  const Configuration& conf, VerificationReport& report) {
  for (const Implication& rule : basis.rules) {
    const HullClosure h = ch_c(conf, rule.premise);
    append_marginal(report.marginal_pairs, h.marginal);
    if (!rule.conclusion.subset_of(h.closed)) report.violated_implications.push_back(rule);
  }
  for (SubsetMask m : meet_irreducibles(g)) {
    const HullClosure h = ch_c(conf, m);
    append_marginal(report.marginal_pairs, h.marginal);
    if (h.closed != m) report.non_closed_meet_irreducibles.push_back(m);
  }
  return report.violated_implications.empty() &&
         report.non_closed_meet_irreducibles.empty();
}

}  // namespace

VerificationReport verify_full(const ConvexGeometry& g, const Configuration& conf) {
  require_same_ground(g, conf);
  VerificationReport report;
  report.target = g.family();
  const InducedAlignment induced = induced_alignment(conf);
  report.induced = induced.family;
  // Diagnostics only; the verdict below comes from the family comparison.
  check_rules_and_irreducibles(g, generate_basis(g), conf, report);
  report.marginal_pairs.clear();
  append_marginal(report.marginal_pairs, induced.marginal);
  if (induced.family != g.family()) {
    report.verdict = Verdict::kFailed;
  } else {
    report.verdict = report.marginal_pairs.empty() ? Verdict::kVerified : Verdict::kMarginal;
  }
  return report;
}

VerificationReport verify_by_propositions(const ConvexGeometry& g,
                                          const ImplicationBasis& basis,
                                          const Configuration& conf) {
  require_same_ground(g, conf);
  if (basis.ground != g.ground() || alignment_from_implications(basis) != g.family()) {
    throw PreconditionError("implication basis does not generate the geometry");
  }
  VerificationReport report;
  report.target = g.family();
  if (!check_rules_and_irreducibles(g, basis, conf, report)) {
    report.verdict = Verdict::kFailed;
    return report;
  }
  const InducedAlignment induced = induced_alignment(conf);
  report.induced = induced.family;
  append_marginal(report.marginal_pairs, induced.marginal);
  report.verdict = report.marginal_pairs.empty() ? Verdict::kVerified : Verdict::kMarginal;
  return report;
}

namespace {

Point normalized_center(const Configuration& conf, Element e) {
  const Circle& c = conf.circle(e);
  return {c.cx / conf.scale(), c.cy / conf.scale()};
}

double orient(Point p, Point q, Point r) {
  return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

ConvexGeometry induced_geometry(const Configuration& conf) {
  const FamilyMask f = induced_alignment(conf).family;
  if (!is_convex_geometry(f, conf.ground())) {
    throw PreconditionError("circles induce a family that is not a convex geometry");
  }
  return ConvexGeometry::from_family(conf.ground(), f);
}

}  // namespace

void require_tight_in_induced(const Configuration& conf, const ConvexGeometry& induced,
                              SubsetMask premise, Element u) {
  if (induced.ground() != conf.ground()) throw InputError("ground set mismatch");
  if (!is_tight(induced, premise, u)) {
    throw PreconditionError("implication " +
                            format_implication(UnitImplication{premise, u}) +
                            " is not tight for these circles");
  }
}

bool triangle_property_check(const Configuration& conf, SubsetMask premise, Element u) {
  return triangle_property_check(conf, induced_geometry(conf), premise, u);
}

bool triangle_property_check(const Configuration& conf, const ConvexGeometry& induced,
                             SubsetMask premise, Element u) {
  if (premise.size() != 3) throw PreconditionError("triangle check needs a 3-element premise");
  require_tight_in_induced(conf, induced, premise, u);
  const auto ids = premise.elements();
  const Point a = normalized_center(conf, ids[0]);
  const Point b = normalized_center(conf, ids[1]);
  const Point c = normalized_center(conf, ids[2]);
  const Point e = normalized_center(conf, u);
  const double area = orient(a, b, c);
  if (std::abs(area) <= kMarginEpsilon) {
    throw PreconditionError("degenerate: premise centers of tight implication " +
                            format_implication(UnitImplication{premise, u}) +
                            " are collinear");
  }
  const double sign = area > 0 ? 1.0 : -1.0;
  return sign * orient(a, b, e) > kMarginEpsilon && sign * orient(b, c, e) > kMarginEpsilon &&
         sign * orient(c, a, e) > kMarginEpsilon;
}

bool centers_hull_check(const Configuration& conf, SubsetMask premise, Element u) {
  return centers_hull_check(conf, induced_geometry(conf), premise, u);
}

bool centers_hull_check(const Configuration& conf, const ConvexGeometry& induced,
                        SubsetMask premise, Element u) {
  if (premise.size() < 3) throw PreconditionError("hull check needs a premise of 3+ elements");
  require_tight_in_induced(conf, induced, premise, u);
  std::vector<Point> pts;
  for (Element x : premise.elements()) pts.push_back(normalized_center(conf, x));
  std::sort(pts.begin(), pts.end(),
            [](Point p, Point q) { return p.x < q.x || (p.x == q.x && p.y < q.y); });
  // Andrew's monotone chain, counterclockwise.
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);

  const Point e = normalized_center(conf, u);
  if (hull.size() >= 3) {
    for (std::size_t i = 0; i < hull.size(); ++i) {
      if (orient(hull[i], hull[(i + 1) % hull.size()], e) < -kMarginEpsilon) return false;
    }
    return true;
  }
  // Collinear centers: distance to the segment (or point).
  const Point p = hull.front();
  const Point q = hull.back();
  const double dx = q.x - p.x;
  const double dy = q.y - p.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((e.x - p.x) * dx + (e.y - p.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(e.x - (p.x + t * dx), e.y - (p.y + t * dy)) <= kMarginEpsilon;
}

const char* pattern_name(ObstructionPattern p) {
  return p == ObstructionPattern::kWedge ? "wedge" : "cascade";
}

std::vector<ObstructionCertificate> detect_obstructions(const ConvexGeometry& g) {
  const int n = g.ground().size();
  std::vector<ObstructionCertificate> out;
  if (n < 5) return out;

  std::array<std::uint32_t, 32> tight3{};  // premise bits -> conclusions
  for (const UnitImplication& t : tight_implications(g, 3)) {
    tight3[t.premise.bits()] |= 1u << t.conclusion;
  }
  auto tight = [&](Element x, Element y, Element z, Element u) {
    const std::uint32_t premise = (1u << x) | (1u << y) | (1u << z);
    return (tight3[premise] >> u) & 1u;
  };
  auto unit = [](Element x, Element y, Element z, Element u) {
    return UnitImplication{SubsetMask((1u << x) | (1u << y) | (1u << z)), u};
  };

  std::set<std::pair<ObstructionPattern, std::array<UnitImplication, 3>>> seen;
  auto record = [&](ObstructionPattern p, std::array<Element, 5> tuple,
                    std::array<UnitImplication, 3> imps) {
    auto key = imps;
    std::sort(key.begin(), key.end());
    if (seen.insert({p, key}).second) out.push_back({p, tuple, imps});
  };

  std::array<Element, 5> t{};
  std::iota(t.begin(), t.end(), 0);
  // n == 5: every ordered tuple is a permutation of the ground set.
  do {
    const auto [a, b, c, d, e] = t;
    if (tight(a, b, c, e) && tight(a, b, d, e) && tight(a, c, d, e)) {
      record(ObstructionPattern::kWedge, t,
             {unit(a, b, c, e), unit(a, b, d, e), unit(a, c, d, e)});
    }
    if (tight(a, b, c, d) && tight(a, c, d, e) && tight(b, c, d, e)) {
      record(ObstructionPattern::kCascade, t,
             {unit(a, b, c, d), unit(a, c, d, e), unit(b, c, d, e)});
    }
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

DeriveStrategy parse_strategy(const std::string& text, GroundSet ground) {
  DeriveStrategy s;
  if (text == "atom") {
    s.kind = DeriveStrategy::Kind::kAtom;
  } else if (text == "coatom") {
    s.kind = DeriveStrategy::Kind::kCoatom;
  } else if (text.rfind("double:", 0) == 0 && text.size() == 8) {
    s.kind = DeriveStrategy::Kind::kDouble;
    s.element = ground.index_of(text[7]);
  } else if (text.rfind("nest:", 0) == 0 && text.size() == 6) {
    s.kind = DeriveStrategy::Kind::kNest;
    s.element = ground.index_of(text[5]);
  } else {
    throw InputError("unknown strategy '" + text +
                     "' (expected atom, coatom, double:<label> or nest:<label>)");
  }
  return s;
}

std::string format_strategy(const DeriveStrategy& s) {
  switch (s.kind) {
    case DeriveStrategy::Kind::kAtom:
      return "atom";
    case DeriveStrategy::Kind::kCoatom:
      return "coatom";
    case DeriveStrategy::Kind::kDouble:
      return std::string("double:") + GroundSet::label(s.element);
    case DeriveStrategy::Kind::kNest:
      return std::string("nest:") + GroundSet::label(s.element);
  }
  return "?";
}

namespace {

// Maximizes a concave function on [lo, hi] by ternary search.
template <typename F>
std::pair<double, double> ternary_max(F&& f, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) < f(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

}  // namespace

std::pair<Point, double> deepest_common_point(std::span<const Circle> circles) {
  if (circles.empty()) throw InputError("deepest point of an empty set of disks");
  double x0 = circles[0].cx, x1 = circles[0].cx;
  double y0 = circles[0].cy, y1 = circles[0].cy;
  for (const Circle& c : circles) {
    x0 = std::min(x0, c.cx - c.r);
    x1 = std::max(x1, c.cx + c.r);
    y0 = std::min(y0, c.cy - c.r);
    y1 = std::max(y1, c.cy + c.r);
  }
  auto depth = [&](double x, double y) {
    double d = std::numeric_limits<double>::infinity();
    for (const Circle& c : circles) d = std::min(d, c.r - std::hypot(x - c.cx, y - c.cy));
    return d;
  };
  // max over y of a concave function is concave in x.
  auto best_y = [&](double x) { return ternary_max([&](double y) { return depth(x, y); }, y0, y1); };
  const auto [x, d] = ternary_max([&](double xx) { return best_y(xx).second; }, x0, x1);
  return {{x, best_y(x).first}, d};
}

Configuration derive_representation(const Configuration& rep, const ConvexGeometry& target,
                                    const DeriveStrategy& strategy) {
  const int n = rep.ground().size();
  if (target.ground().size() != n + 1) {
    throw InputError("target geometry must have exactly one more element than the "
                     "configuration");
  }
  std::vector<Circle> circles = rep.circles();
  switch (strategy.kind) {
    case DeriveStrategy::Kind::kAtom: {
      const auto [p, depth] = deepest_common_point(circles);
      if (depth <= kMarginEpsilon * rep.scale()) {
        throw PreconditionError("atom strategy needs disks with a common interior point");
      }
      circles.push_back({p.x, p.y, 0.0});
      break;
    }
    case DeriveStrategy::Kind::kCoatom: {
      double mx = 0.0, my = 0.0;
      for (const Circle& c : circles) {
        mx += c.cx;
        my += c.cy;
      }
      mx /= n;
      my /= n;
      double radius = 0.0;
      for (const Circle& c : circles) {
        radius = std::max(radius, std::hypot(c.cx - mx, c.cy - my) + c.r);
      }
      circles.push_back({mx, my, radius * (1.0 + kDeriveOffset)});
      break;
    }
    case DeriveStrategy::Kind::kDouble: {
      if (strategy.element >= n) throw InputError("strategy names an unknown element");
      Circle c = rep.circle(strategy.element);
      c.cx += kDeriveOffset * rep.scale();
      circles.push_back(c);
      break;
    }
    case DeriveStrategy::Kind::kNest: {
      if (strategy.element >= n) throw InputError("strategy names an unknown element");
      Circle c = rep.circle(strategy.element);
      c.r *= 0.5;
      circles.push_back(c);
      break;
    }
  }
  return Configuration(target.ground(), std::move(circles));
}

}  // namespace cgw
