#pragma once

// Planar geometry of disks: support functions, convex hull boundaries of
// unions of disks, disk-in-hull containment and the hull closure operator on
// a labeled configuration of circles.
//
// Every containment decision is made on coordinates normalized so that the
// largest distance between centers is 1, against a fixed absolute band
// kMarginEpsilon. Decisions inside the band are reported as marginal rather
// than rounded either way.

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cgw/sets.hpp"

namespace cgw {

inline constexpr double kMarginEpsilon = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Radius 0 is allowed and stands for a point.
struct Circle {
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;

  Point center() const { return {cx, cy}; }
  friend bool operator==(const Circle&, const Circle&) = default;
};

// Throws InputError for non-finite values or a negative radius.
void check_circle(const Circle& c);

// Length used to normalize a set of circles: the largest center distance,
// else the largest radius, else 1.
double normalization_scale(std::span<const Circle> circles);

class Configuration {
 public:
  // One circle per element, in element order. Throws InputError on a size
  // mismatch or an invalid circle.
  Configuration(GroundSet ground, std::vector<Circle> circles);

  GroundSet ground() const { return ground_; }
  const std::vector<Circle>& circles() const { return circles_; }
  const Circle& circle(Element e) const { return circles_.at(static_cast<std::size_t>(e)); }
  double scale() const { return scale_; }

  std::vector<Circle> select(SubsetMask s) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  GroundSet ground_;
  std::vector<Circle> circles_;
  double scale_;
};

// Moves circle i to element perm[i].
Configuration relabel(const Configuration& conf, const Permutation& perm);

// cx cos(theta) + cy sin(theta) + r
double support_value(const Circle& c, double theta);

struct ArcFeature {
  std::size_t circle;  // index into the input list
  double start;        // direction angle in [0, 2pi), radians
  double end;          // start < end <= start + 2pi, counterclockwise
};

struct SegmentFeature {
  Point from;
  Point to;
};

using HullFeature = std::variant<ArcFeature, SegmentFeature>;

// Counterclockwise boundary of the convex hull of a union of disks,
// alternating arcs and tangent segments. A single dominating disk yields a
// full-circle arc and no segments.
struct HullBoundary {
  std::vector<HullFeature> features;

  int arc_count() const;
  int segment_count() const;
};

// Support-function sweep. Throws InputError on empty input.
HullBoundary hull_boundary(std::span<const Circle> circles);

enum class TripleClass { kI, kII, kIII };

const char* triple_class_name(TripleClass c);

// I: two arcs (one disk lies in, or touches, the hull of the other two);
// II: four arcs; III: three arcs. Throws InputError if one disk contains
// another and MarginalError if a hull arc is too short to count reliably.
TripleClass classify_triple(const Circle& a, const Circle& b, const Circle& c);

enum class ContainmentState { kInside, kOutside, kMarginal };

const char* containment_name(ContainmentState s);

struct Containment {
  ContainmentState state;
  double margin;  // min over directions of (hull support - e support), input units
};

// Decides whether disk e lies in the convex hull of the union of `others`.
// The margin is minimized exactly over the finitely many critical
// directions of the support envelope. `scale` defaults to
// normalization_scale of e and others. Throws InputError if others is empty.
Containment disk_in_hull(const Circle& e, std::span<const Circle> others,
                         std::optional<double> scale = std::nullopt);

struct MarginalPair {
  Element element;
  SubsetMask subset;
  double margin;

  friend bool operator==(const MarginalPair&, const MarginalPair&) = default;
};

struct HullClosure {
  SubsetMask closed;
  std::vector<MarginalPair> marginal;  // counted as contained
};

// The elements whose disks lie in the hull of the disks of y (y itself
// included); the empty set maps to itself.
HullClosure ch_c(const Configuration& conf, SubsetMask y);

struct InducedAlignment {
  FamilyMask family;
  std::vector<MarginalPair> marginal;  // every marginal pair met, all subsets
};

// The family of subsets fixed by ch_c.
InducedAlignment induced_alignment(const Configuration& conf);

}  // namespace cgw
