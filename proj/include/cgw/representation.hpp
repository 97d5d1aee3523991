#pragma once

// Checking circle configurations against convex geometries, certificates of
// non-representability, and candidate constructions of five-circle
// configurations from four-circle ones.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cgw/disks.hpp"
#include "cgw/implications.hpp"
#include "cgw/sets.hpp"

namespace cgw {

enum class Verdict { kVerified, kFailed, kMarginal };

const char* verdict_name(Verdict v);

struct VerificationReport {
  Verdict verdict = Verdict::kFailed;
  FamilyMask target;
  // The alignment induced by the circles; absent when a proposition check
  // failed before it was needed.
  std::optional<FamilyMask> induced;
  std::vector<Implication> violated_implications;
  std::vector<SubsetMask> non_closed_meet_irreducibles;
  std::vector<MarginalPair> marginal_pairs;
};

// Compares the induced alignment with the target family under the identity
// labeling. Verified only if they are equal and no containment anywhere in
// the configuration is marginal.
VerificationReport verify_full(const ConvexGeometry& g, const Configuration& conf);

// Checks that every basis rule holds for the circles (then the induced
// alignment is contained in the target) and that every meet-irreducible is
// closed for the circles (then the target is contained in the induced
// alignment). When both pass, the configuration is swept for marginal
// containments so the verdict always matches verify_full. Throws
// PreconditionError if the basis does not generate g.
VerificationReport verify_by_propositions(const ConvexGeometry& g,
                                          const ImplicationBasis& basis,
                                          const Configuration& conf);

// Tight implication Y -> u in the alignment induced by conf; throws
// PreconditionError otherwise (including when the induced family is not a
// convex geometry).
void require_tight_in_induced(const Configuration& conf, const ConvexGeometry& induced,
                              SubsetMask premise, Element u);

// Whether the center of u lies strictly inside the triangle of the three
// premise centers. Throws PreconditionError when the premise is not three
// elements, the implication is not tight, or the premise centers are
// collinear within tolerance.
bool triangle_property_check(const Configuration& conf, SubsetMask premise, Element u);
bool triangle_property_check(const Configuration& conf, const ConvexGeometry& induced,
                             SubsetMask premise, Element u);

// Whether the center of u lies in the closed convex hull of the premise
// centers (premise of three or more elements, tight).
bool centers_hull_check(const Configuration& conf, SubsetMask premise, Element u);
bool centers_hull_check(const Configuration& conf, const ConvexGeometry& induced,
                        SubsetMask premise, Element u);

enum class ObstructionPattern {
  kWedge,    // abc->e, abd->e, acd->e
  kCascade,  // abc->d, acd->e, bcd->e
};

const char* pattern_name(ObstructionPattern p);

struct ObstructionCertificate {
  ObstructionPattern pattern;
  std::array<Element, 5> elements;  // (a, b, c, d, e)
  std::array<UnitImplication, 3> implications;

  friend bool operator==(const ObstructionCertificate&,
                         const ObstructionCertificate&) = default;
};

// Searches every ordered tuple of five distinct elements for both patterns
// of tight implications; each pattern instance is reported once, at its
// lexicographically first tuple. A nonempty result means the geometry has
// no representation by circles.
std::vector<ObstructionCertificate> detect_obstructions(const ConvexGeometry& g);

struct DeriveStrategy {
  enum class Kind { kAtom, kCoatom, kDouble, kNest };
  Kind kind = Kind::kCoatom;
  Element element = 0;  // for kDouble and kNest
};

// "atom", "coatom", "double:<label>", "nest:<label>".
DeriveStrategy parse_strategy(const std::string& text, GroundSet ground);
std::string format_strategy(const DeriveStrategy& s);

// Deepest point of the common intersection of the disks: maximizes
// min_i (r_i - |p - c_i|). Returns the point and its depth.
std::pair<Point, double> deepest_common_point(std::span<const Circle> circles);

inline constexpr double kDeriveOffset = 0.05;

// Adds one circle (labeled with the next letter) to a configuration on
// one element fewer than the target geometry:
//   atom:   radius-0 circle at the deepest common point (needs positive depth)
//   coatom: circle at the centroid of the centers, enclosing all disks
//           with a 5% radius allowance
//   double: copy of the named circle shifted by 5% of the scale along x
//   nest:   concentric circle with half the named circle's radius
// The result is only a candidate; verify it against the intended geometry.
Configuration derive_representation(const Configuration& rep,
                                    const ConvexGeometry& target,
                                    const DeriveStrategy& strategy);

}  // namespace cgw
