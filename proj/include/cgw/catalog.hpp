#pragma once

// The catalog of non-isomorphic convex geometries with their derived data,
// its JSON-lines persistence, the circle configuration file format and
// catalog search.
//
// Record ids are "G<n>-<k>" with k the 1-based position in enumeration
// order (member count, then canonical mask). They are not the numbering of
// any published list; use an iso_to search to map a known family onto an id.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cgw/disks.hpp"
#include "cgw/representation.hpp"
#include "cgw/sets.hpp"

namespace cgw {

enum class Status { kVerified, kImpossible, kOpen };

const char* status_name(Status s);
Status parse_status(const std::string& text);

struct CatalogRecord {
  std::string id;
  int n = 0;
  FamilyMask family;
  std::vector<std::string> closed_sets;                       // member order
  std::vector<std::pair<std::string, std::string>> basis;     // (premise, conclusion)
  std::vector<std::string> meet_irreducibles;
  int cdim = 0;
  bool unique_atom = false;
  bool unique_coatom = false;
  Status status = Status::kOpen;
  std::optional<ObstructionCertificate> certificate;
  std::optional<Configuration> representation;

  ConvexGeometry geometry() const;
};

bool operator==(const CatalogRecord& a, const CatalogRecord& b);

using Catalog = std::vector<CatalogRecord>;

// Derived fields, obstruction certificate and status for one family.
CatalogRecord make_record(GroundSet ground, FamilyMask family, int position);

// Throws InputError unless 1 <= n <= 5.
Catalog build_catalog(int n);

// "G5-17" -> 5. Throws InputError on a malformed id.
int parse_record_id(const std::string& id);

// Throws NotFoundError.
const CatalogRecord& find_record(const Catalog& catalog, const std::string& id);

// Record whose family is isomorphic to f, if any.
const CatalogRecord* find_isomorphic(const Catalog& catalog, FamilyMask f);

// Finds the record isomorphic to the alignment the circles induce, relabels
// the circles onto that record's labeling and stores them as its
// representation if they verify. Returns the record id on success.
std::optional<std::string> attach_representation(Catalog& catalog, const Configuration& conf);

// Attaches every *.json configuration in dir whose size matches the
// catalog. Returns the ids that became verified.
std::vector<std::string> attach_fixture_dir(Catalog& catalog, const std::filesystem::path& dir);

// Recomputes derived fields from the family mask; equal to the stored
// record apart from status, certificate and representation bookkeeping.
bool derived_fields_consistent(const CatalogRecord& record);

// --- JSON -------------------------------------------------------------------

// Circle coordinates are written with 12 significant digits.
nlohmann::json configuration_to_json(const Configuration& conf);
// Accepts {n?, labels?, circles:[{label,x,y,r}...]} or a bare circle array.
// Circles may appear in any label order. Throws InputError.
Configuration configuration_from_json(const nlohmann::json& j);

Configuration read_configuration_file(const std::filesystem::path& path);
void write_configuration_file(const std::filesystem::path& path, const Configuration& conf);

nlohmann::json certificate_to_json(const ObstructionCertificate& c);
ObstructionCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json record_to_json(const CatalogRecord& r);
CatalogRecord record_from_json(const nlohmann::json& j);

// One JSON object per line.
void write_catalog(std::ostream& out, const Catalog& catalog);
Catalog read_catalog(std::istream& in);

nlohmann::json report_to_json(const VerificationReport& r);
nlohmann::json hull_to_json(const HullBoundary& hull, const std::vector<Element>& labels);

// --- search -----------------------------------------------------------------

// Conjunction of the filters that are set.
struct Query {
  std::optional<bool> unique_atom;
  std::optional<bool> unique_coatom;
  std::optional<int> cdim;
  std::optional<FamilyMask> iso_to;
  std::optional<Status> status;
};

// Keys: unique_atom, unique_coatom (true/false/1/0), cdim, iso_to, status.
// Unknown keys or bad values throw InputError.
Query parse_query(const std::map<std::string, std::string>& params);

std::vector<std::string> search(const Catalog& catalog, const Query& query);

}  // namespace cgw
