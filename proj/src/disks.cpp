#include "cgw/disks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cgw/errors.hpp"

namespace cgw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Sweep intervals shorter than this (radians) are treated as breakpoints.
constexpr double kMinInterval = 1e-12;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t >= kTwoPi ? 0.0 : t;
}

// Directions where the supports of a and b are equal:
// (ca - cb) . u(theta) = rb - ra.
void append_crossings(const Circle& a, const Circle& b, std::vector<double>& out) {
  const double dx = a.cx - b.cx;
  const double dy = a.cy - b.cy;
  const double len = std::hypot(dx, dy);
  if (len == 0.0) return;
  const double k = (b.r - a.r) / len;
  if (k < -1.0 || k > 1.0) return;
  const double phi = std::atan2(dy, dx);
  const double delta = std::acos(k);
  out.push_back(wrap_angle(phi + delta));
  out.push_back(wrap_angle(phi - delta));
}

Point support_point(const Circle& c, double theta) {
  return {c.cx + c.r * std::cos(theta), c.cy + c.r * std::sin(theta)};
}

std::size_t dominant(std::span<const Circle> circles, double theta) {
  std::size_t best = 0;
  double best_h = support_value(circles[0], theta);
  for (std::size_t i = 1; i < circles.size(); ++i) {
    const double h = support_value(circles[i], theta);
    if (h > best_h) {
      best_h = h;
      best = i;
    }
  }
  return best;
}

}  // namespace

void check_circle(const Circle& c) {
  if (!std::isfinite(c.cx) || !std::isfinite(c.cy) || !std::isfinite(c.r)) {
    throw InputError("circle coordinates must be finite");
  }
  if (c.r < 0) throw InputError("circle radius must be non-negative");
}

double normalization_scale(std::span<const Circle> circles) {
  double dist = 0.0;
  double radius = 0.0;
  for (std::size_t i = 0; i < circles.size(); ++i) {
    radius = std::max(radius, circles[i].r);
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      dist = std::max(dist, std::hypot(circles[i].cx - circles[j].cx,
                                       circles[i].cy - circles[j].cy));
    }
  }
  if (dist > 0) return dist;
  if (radius > 0) return radius;
  return 1.0;
}

Configuration::Configuration(GroundSet ground, std::vector<Circle> circles)
    : ground_(ground), circles_(std::move(circles)) {
  if (circles_.size() != static_cast<std::size_t>(ground.size())) {
    throw InputError("configuration needs " + std::to_string(ground.size()) +
                     " circles, got " + std::to_string(circles_.size()));
  }
  for (const Circle& c : circles_) check_circle(c);
  scale_ = normalization_scale(circles_);
}

std::vector<Circle> Configuration::select(SubsetMask s) const {
  std::vector<Circle> out;
  for (Element e : s.elements()) out.push_back(circle(e));
  return out;
}

Configuration relabel(const Configuration& conf, const Permutation& perm) {
  std::vector<Circle> out(conf.circles().size());
  for (Element i = 0; i < conf.ground().size(); ++i) {
    out.at(static_cast<std::size_t>(perm[i])) = conf.circle(i);
  }
  return Configuration(conf.ground(), std::move(out));
}

double support_value(const Circle& c, double theta) {
  return c.cx * std::cos(theta) + c.cy * std::sin(theta) + c.r;
}

int HullBoundary::arc_count() const {
  return static_cast<int>(std::count_if(features.begin(), features.end(), [](const HullFeature& f) {
    return std::holds_alternative<ArcFeature>(f);
  }));
}

int HullBoundary::segment_count() const {
  return static_cast<int>(features.size()) - arc_count();
}

HullBoundary hull_boundary(std::span<const Circle> circles) {
  if (circles.empty()) throw InputError("hull of an empty set of circles");
  for (const Circle& c : circles) check_circle(c);

  std::vector<double> breaks{0.0};
  for (std::size_t i = 0; i < circles.size(); ++i) {
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      append_crossings(circles[i], circles[j], breaks);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return b - a < kMinInterval; }),
               breaks.end());

  struct Run {
    std::size_t circle;
    double start;
    double end;
  };
  std::vector<Run> runs;
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    const double lo = breaks[k];
    const double hi = k + 1 < breaks.size() ? breaks[k + 1] : breaks[0] + kTwoPi;
    if (hi - lo < kMinInterval) continue;
    const std::size_t who = dominant(circles, 0.5 * (lo + hi));
    if (!runs.empty() && runs.back().circle == who) {
      runs.back().end = hi;
    } else {
      runs.push_back({who, lo, hi});
    }
  }
  if (runs.size() > 1 && runs.front().circle == runs.back().circle) {
    runs.front().start = runs.back().start - kTwoPi;
    runs.pop_back();
  }

  HullBoundary out;
  if (runs.size() == 1) {
    out.features.push_back(ArcFeature{runs[0].circle, 0.0, kTwoPi});
    return out;
  }
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const Run& cur = runs[k];
    const Run& next = runs[(k + 1) % runs.size()];
    const double start = wrap_angle(cur.start);
    out.features.push_back(ArcFeature{cur.circle, start, start + (cur.end - cur.start)});
    out.features.push_back(SegmentFeature{support_point(circles[cur.circle], cur.end),
                                          support_point(circles[next.circle], cur.end)});
  }
  return out;
}

const char* triple_class_name(TripleClass c) {
  switch (c) {
    case TripleClass::kI:
      return "I";
    case TripleClass::kII:
      return "II";
    case TripleClass::kIII:
      return "III";
  }
  return "?";
}

TripleClass classify_triple(const Circle& a, const Circle& b, const Circle& c) {
  const std::array<Circle, 3> all{a, b, c};
  for (const Circle& x : all) check_circle(x);
  const double scale = normalization_scale(all);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      const double gap = all[j].r - all[i].r -
                         std::hypot(all[i].cx - all[j].cx, all[i].cy - all[j].cy);
      if (gap >= -kMarginEpsilon * scale) {
        throw InputError("disk " + std::to_string(i) + " lies inside disk " +
                         std::to_string(j));
      }
    }
  }
  // A disk touching the hull of the other two counts as contained, as in
  // ch_c; it contributes no arc of positive length.
  for (std::size_t i = 0; i < 3; ++i) {
    const std::array<Circle, 2> rest{all[(i + 1) % 3], all[(i + 2) % 3]};
    if (disk_in_hull(all[i], rest, scale).state != ContainmentState::kOutside) {
      return TripleClass::kI;
    }
  }
  const HullBoundary hull = hull_boundary(all);
  for (const HullFeature& f : hull.features) {
    const auto* arc = std::get_if<ArcFeature>(&f);
    if (arc != nullptr && arc->end - arc->start <= kMarginEpsilon) {
      throw MarginalError("hull arc of circle " + std::to_string(arc->circle) +
                              " spans less than the tolerance",
                          arc->end - arc->start);
    }
  }
  switch (hull.arc_count()) {
    case 2:
      return TripleClass::kI;
    case 3:
      return TripleClass::kIII;
    case 4:
      return TripleClass::kII;
    default:
      throw MarginalError("unexpected hull structure with " +
                              std::to_string(hull.arc_count()) + " arcs",
                          0.0);
  }
}

const char* containment_name(ContainmentState s) {
  switch (s) {
    case ContainmentState::kInside:
      return "inside";
    case ContainmentState::kOutside:
      return "outside";
    case ContainmentState::kMarginal:
      return "marginal";
  }
  return "?";
}

Containment disk_in_hull(const Circle& e, std::span<const Circle> others,
                         std::optional<double> scale) {
  if (others.empty()) throw InputError("containment test against an empty hull");
  check_circle(e);
  for (const Circle& c : others) check_circle(c);

  double unit = 0.0;
  if (scale) {
    unit = *scale;
  } else {
    std::vector<Circle> all(others.begin(), others.end());
    all.push_back(e);
    unit = normalization_scale(all);
  }

  // gap(theta) = max_i h_i(theta) - h_e(theta) is a max of shifted
  // sinusoids; its minimum sits at a breakpoint of the max or at the
  // minimum of a single term.
  std::vector<double> candidates{0.0};
  for (std::size_t i = 0; i < others.size(); ++i) {
    const double dx = others[i].cx - e.cx;
    const double dy = others[i].cy - e.cy;
    if (dx != 0.0 || dy != 0.0) candidates.push_back(std::atan2(dy, dx) + std::numbers::pi);
    for (std::size_t j = i + 1; j < others.size(); ++j) {
      append_crossings(others[i], others[j], candidates);
    }
  }
  double margin = std::numeric_limits<double>::infinity();
  for (double theta : candidates) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    double env = -std::numeric_limits<double>::infinity();
    for (const Circle& c : others) env = std::max(env, c.cx * ct + c.cy * st + c.r);
    margin = std::min(margin, env - (e.cx * ct + e.cy * st + e.r));
  }

  const double normalized = margin / unit;
  ContainmentState state = ContainmentState::kMarginal;
  if (normalized > kMarginEpsilon) {
    state = ContainmentState::kInside;
  } else if (normalized < -kMarginEpsilon) {
    state = ContainmentState::kOutside;
  }
  return {state, margin};
}

HullClosure ch_c(const Configuration& conf, SubsetMask y) {
  check_subset(y, conf.ground());
  HullClosure out{y, {}};
  if (y.empty()) return out;
  const std::vector<Circle> hull = conf.select(y);
  for (Element x = 0; x < conf.ground().size(); ++x) {
    if (y.contains(x)) continue;
    const Containment c = disk_in_hull(conf.circle(x), hull, conf.scale());
    if (c.state == ContainmentState::kOutside) continue;
    out.closed = out.closed.with(x);
    if (c.state == ContainmentState::kMarginal) out.marginal.push_back({x, y, c.margin});
  }
  return out;
}

InducedAlignment induced_alignment(const Configuration& conf) {
  InducedAlignment out{};
  for (std::uint32_t w = 0; w < conf.ground().subset_count(); ++w) {
    HullClosure h = ch_c(conf, SubsetMask(w));
    if (h.closed == SubsetMask(w)) out.family = out.family.with(SubsetMask(w));
    out.marginal.insert(out.marginal.end(), h.marginal.begin(), h.marginal.end());
  }
  return out;
}

}  // namespace cgw
