#include "cgw/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include "cgw/dimension.hpp"
#include "cgw/errors.hpp"
#include "cgw/implications.hpp"

namespace cgw {

using nlohmann::json;

const char* status_name(Status s) {
  switch (s) {
    case Status::kVerified:
      return "verified";
    case Status::kImpossible:
      return "impossible";
    case Status::kOpen:
      return "open";
  }
  return "?";
}

Status parse_status(const std::string& text) {
  if (text == "verified") return Status::kVerified;
  if (text == "impossible") return Status::kImpossible;
  if (text == "open") return Status::kOpen;
  throw InputError("unknown status '" + text + "'");
}

ConvexGeometry CatalogRecord::geometry() const {
  return ConvexGeometry::from_family(GroundSet(n), family);
}

bool operator==(const CatalogRecord& a, const CatalogRecord& b) {
  return a.id == b.id && a.n == b.n && a.family == b.family &&
         a.closed_sets == b.closed_sets && a.basis == b.basis &&
         a.meet_irreducibles == b.meet_irreducibles && a.cdim == b.cdim &&
         a.unique_atom == b.unique_atom && a.unique_coatom == b.unique_coatom &&
         a.status == b.status && a.certificate == b.certificate &&
         a.representation == b.representation;
}

CatalogRecord make_record(GroundSet ground, FamilyMask family, int position) {
  const ConvexGeometry g = ConvexGeometry::from_family(ground, family);
  CatalogRecord r;
  r.id = "G" + std::to_string(ground.size()) + "-" + std::to_string(position);
  r.n = ground.size();
  r.family = family;
  int atoms = 0;
  int coatoms = 0;
  for (SubsetMask s : family.members()) {
    r.closed_sets.push_back(subset_decode(s));
    if (s.size() == 1) ++atoms;
    if (s.size() == ground.size() - 1) ++coatoms;
  }
  for (const Implication& imp : generate_basis(g).rules) {
    r.basis.emplace_back(subset_decode(imp.premise), subset_decode(imp.conclusion));
  }
  for (SubsetMask m : meet_irreducibles(g)) r.meet_irreducibles.push_back(subset_decode(m));
  r.cdim = convex_dimension(g);
  r.unique_atom = atoms == 1;
  r.unique_coatom = coatoms == 1;
  const auto certs = detect_obstructions(g);
  if (!certs.empty()) {
    r.certificate = certs.front();
    r.status = Status::kImpossible;
  }
  return r;
}

Catalog build_catalog(int n) {
  const GroundSet ground(n);
  Catalog out;
  int position = 0;
  for (FamilyMask f : enumerate_geometries(ground)) {
    out.push_back(make_record(ground, f, ++position));
  }
  return out;
}

int parse_record_id(const std::string& id) {
  const auto dash = id.find('-');
  int n = 0;
  int k = 0;
  if (id.size() < 4 || id[0] != 'G' || dash == std::string::npos ||
      std::from_chars(id.data() + 1, id.data() + dash, n).ptr != id.data() + dash ||
      std::from_chars(id.data() + dash + 1, id.data() + id.size(), k).ptr !=
          id.data() + id.size() ||
      k < 1) {
    throw InputError("malformed geometry id '" + id + "' (expected G<n>-<k>)");
  }
  static_cast<void>(GroundSet(n));
  return n;
}

const CatalogRecord& find_record(const Catalog& catalog, const std::string& id) {
  for (const CatalogRecord& r : catalog) {
    if (r.id == id) return r;
  }
  throw NotFoundError("no geometry with id '" + id + "'");
}

const CatalogRecord* find_isomorphic(const Catalog& catalog, FamilyMask f) {
  if (catalog.empty()) return nullptr;
  const GroundSet ground(catalog.front().n);
  if ((f.bits() & ~ground.family_bits()) != 0) return nullptr;
  const FamilyMask canon = canonical_form(f, ground);
  for (const CatalogRecord& r : catalog) {
    if (r.family == canon) return &r;
  }
  return nullptr;
}

std::optional<std::string> attach_representation(Catalog& catalog, const Configuration& conf) {
  if (catalog.empty() || catalog.front().n != conf.ground().size()) return std::nullopt;
  const InducedAlignment induced = induced_alignment(conf);
  if (!induced.marginal.empty()) return std::nullopt;
  const CatalogRecord* match = find_isomorphic(catalog, induced.family);
  if (match == nullptr) return std::nullopt;
  const auto perm = find_isomorphism(induced.family, match->family, conf.ground());
  if (!perm) return std::nullopt;
  // Round to the persisted precision so a stored catalog re-verifies
  // exactly what was checked here.
  const Configuration relabeled =
      configuration_from_json(configuration_to_json(relabel(conf, *perm)));
  CatalogRecord& record = catalog[static_cast<std::size_t>(match - catalog.data())];
  if (record.status == Status::kImpossible) return std::nullopt;
  if (verify_full(record.geometry(), relabeled).verdict != Verdict::kVerified) {
    return std::nullopt;
  }
  record.representation = relabeled;
  record.status = Status::kVerified;
  return record.id;
}

std::vector<std::string> attach_fixture_dir(Catalog& catalog, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> ids;
  for (const auto& path : files) {
    const Configuration conf = read_configuration_file(path);
    if (catalog.empty() || conf.ground().size() != catalog.front().n) continue;
    if (auto id = attach_representation(catalog, conf)) ids.push_back(*id);
  }
  return ids;
}

bool derived_fields_consistent(const CatalogRecord& record) {
  const auto position = std::stoi(record.id.substr(record.id.find('-') + 1));
  CatalogRecord fresh = make_record(GroundSet(record.n), record.family, position);
  const bool status_ok =
      (record.status == Status::kImpossible) == record.certificate.has_value() &&
      (record.status == Status::kVerified) == record.representation.has_value();
  fresh.status = record.status;
  fresh.representation = record.representation;
  return status_ok && fresh == record;
}

// --- JSON -------------------------------------------------------------------

namespace {

double round12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad field '") + key + "': " + e.what());
  }
}

json pair_list(const std::vector<std::pair<std::string, std::string>>& v) {
  json out = json::array();
  for (const auto& [a, b] : v) out.push_back(json::array({a, b}));
  return out;
}

}  // namespace

json configuration_to_json(const Configuration& conf) {
  json circles = json::array();
  std::string labels;
  for (Element e = 0; e < conf.ground().size(); ++e) {
    const Circle& c = conf.circle(e);
    labels.push_back(GroundSet::label(e));
    circles.push_back({{"label", std::string(1, GroundSet::label(e))},
                       {"x", round12(c.cx)},
                       {"y", round12(c.cy)},
                       {"r", round12(c.r)}});
  }
  json label_list = json::array();
  for (char ch : labels) label_list.push_back(std::string(1, ch));
  return {{"n", conf.ground().size()}, {"labels", label_list}, {"circles", circles}};
}

Configuration configuration_from_json(const json& j) {
  const json& circles = j.is_array() ? j : j.value("circles", json());
  if (!circles.is_array() || circles.empty()) {
    throw InputError("configuration needs a nonempty 'circles' array");
  }
  const int count = static_cast<int>(circles.size());
  if (j.is_object() && j.contains("n") && get_field<int>(j, "n") != count) {
    throw InputError("'n' does not match the number of circles");
  }
  const GroundSet ground(count);
  std::vector<std::optional<Circle>> slots(static_cast<std::size_t>(count));
  for (const json& c : circles) {
    const auto label = get_field<std::string>(c, "label");
    if (label.size() != 1) throw InputError("circle labels are single letters");
    const Element e = ground.index_of(label[0]);
    auto& slot = slots[static_cast<std::size_t>(e)];
    if (slot) throw InputError("duplicate circle label '" + label + "'");
    slot = Circle{get_field<double>(c, "x"), get_field<double>(c, "y"),
                  get_field<double>(c, "r")};
  }
  if (j.is_object() && j.contains("labels")) {
    const auto labels = get_field<std::vector<std::string>>(j, "labels");
    if (static_cast<int>(labels.size()) != count) {
      throw InputError("'labels' does not match the circles");
    }
    for (const auto& l : labels) {
      if (l.size() != 1) throw InputError("circle labels are single letters");
      ground.index_of(l[0]);
    }
  }
  std::vector<Circle> out;
  for (const auto& slot : slots) out.push_back(*slot);
  return Configuration(ground, std::move(out));
}

Configuration read_configuration_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open configuration file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("malformed configuration file " + path.string() + ": " + e.what());
  }
  return configuration_from_json(j);
}

void write_configuration_file(const std::filesystem::path& path, const Configuration& conf) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write configuration file " + path.string());
  out << configuration_to_json(conf).dump(2) << "\n";
}

json certificate_to_json(const ObstructionCertificate& c) {
  std::string tuple;
  for (Element e : c.elements) tuple.push_back(GroundSet::label(e));
  json imps = json::array();
  for (const UnitImplication& u : c.implications) {
    imps.push_back(json::array({subset_decode(u.premise), std::string(1, GroundSet::label(u.conclusion))}));
  }
  return {{"pattern", pattern_name(c.pattern)}, {"elements", tuple}, {"implications", imps}};
}

ObstructionCertificate certificate_from_json(const json& j) {
  const GroundSet ground(kMaxElements);
  ObstructionCertificate c{};
  const auto pattern = get_field<std::string>(j, "pattern");
  if (pattern == "wedge") {
    c.pattern = ObstructionPattern::kWedge;
  } else if (pattern == "cascade") {
    c.pattern = ObstructionPattern::kCascade;
  } else {
    throw InputError("unknown obstruction pattern '" + pattern + "'");
  }
  const auto tuple = get_field<std::string>(j, "elements");
  if (tuple.size() != 5) throw InputError("certificate needs five elements");
  for (std::size_t i = 0; i < 5; ++i) c.elements[i] = ground.index_of(tuple[i]);
  const auto imps = get_field<std::vector<std::pair<std::string, std::string>>>(j, "implications");
  if (imps.size() != 3 || imps[0].second.size() != 1 || imps[1].second.size() != 1 ||
      imps[2].second.size() != 1) {
    throw InputError("certificate needs three unit implications");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    c.implications[i] = {subset_encode(imps[i].first, ground), ground.index_of(imps[i].second[0])};
  }
  return c;
}

json record_to_json(const CatalogRecord& r) {
  json j = {{"id", r.id},
            {"n", r.n},
            {"family_mask", r.family.bits()},
            {"closed_sets", r.closed_sets},
            {"basis", pair_list(r.basis)},
            {"meet_irreducibles", r.meet_irreducibles},
            {"cdim", r.cdim},
            {"unique_atom", r.unique_atom},
            {"unique_coatom", r.unique_coatom},
            {"status", status_name(r.status)},
            {"certificate", r.certificate ? certificate_to_json(*r.certificate) : json()},
            {"representation",
             r.representation ? configuration_to_json(*r.representation) : json()}};
  return j;
}

CatalogRecord record_from_json(const json& j) {
  CatalogRecord r;
  r.id = get_field<std::string>(j, "id");
  r.n = get_field<int>(j, "n");
  r.family = FamilyMask(get_field<std::uint32_t>(j, "family_mask"));
  r.closed_sets = get_field<std::vector<std::string>>(j, "closed_sets");
  r.basis = get_field<std::vector<std::pair<std::string, std::string>>>(j, "basis");
  r.meet_irreducibles = get_field<std::vector<std::string>>(j, "meet_irreducibles");
  r.cdim = get_field<int>(j, "cdim");
  r.unique_atom = get_field<bool>(j, "unique_atom");
  r.unique_coatom = get_field<bool>(j, "unique_coatom");
  r.status = parse_status(get_field<std::string>(j, "status"));
  if (j.contains("certificate") && !j["certificate"].is_null()) {
    r.certificate = certificate_from_json(j["certificate"]);
  }
  if (j.contains("representation") && !j["representation"].is_null()) {
    r.representation = configuration_from_json(j["representation"]);
  }
  check_family(r.family, GroundSet(r.n));
  return r;
}

void write_catalog(std::ostream& out, const Catalog& catalog) {
  for (const CatalogRecord& r : catalog) out << record_to_json(r).dump() << "\n";
}

Catalog read_catalog(std::istream& in) {
  Catalog out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw InputError("catalog line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

json report_to_json(const VerificationReport& r) {
  json violated = json::array();
  for (const Implication& imp : r.violated_implications) {
    violated.push_back(json::array({subset_decode(imp.premise), subset_decode(imp.conclusion)}));
  }
  json mis = json::array();
  for (SubsetMask m : r.non_closed_meet_irreducibles) mis.push_back(subset_decode(m));
  json marginal = json::array();
  for (const MarginalPair& m : r.marginal_pairs) {
    marginal.push_back({{"element", std::string(1, GroundSet::label(m.element))},
                        {"subset", subset_decode(m.subset)},
                        {"margin", m.margin}});
  }
  return {{"verdict", verdict_name(r.verdict)},
          {"target", r.target.bits()},
          {"induced", r.induced ? json(r.induced->bits()) : json()},
          {"violated_implications", violated},
          {"non_closed_meet_irreducibles", mis},
          {"marginal_pairs", marginal}};
}

json hull_to_json(const HullBoundary& hull, const std::vector<Element>& labels) {
  json features = json::array();
  for (const HullFeature& f : hull.features) {
    if (const auto* arc = std::get_if<ArcFeature>(&f)) {
      features.push_back({{"type", "arc"},
                          {"circle", std::string(1, GroundSet::label(labels.at(arc->circle)))},
                          {"start", arc->start},
                          {"end", arc->end}});
    } else {
      const auto& seg = std::get<SegmentFeature>(f);
      features.push_back({{"type", "segment"},
                          {"from", {seg.from.x, seg.from.y}},
                          {"to", {seg.to.x, seg.to.y}}});
    }
  }
  return {{"arcs", hull.arc_count()}, {"segments", hull.segment_count()}, {"features", features}};
}

// --- search -----------------------------------------------------------------

namespace {

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v.empty()) return true;
  if (v == "0" || v == "false") return false;
  throw InputError("bad boolean for '" + key + "': " + v);
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw InputError("bad number for '" + key + "': " + v);
  }
  return out;
}

}  // namespace

Query parse_query(const std::map<std::string, std::string>& params) {
  Query q;
  for (const auto& [key, value] : params) {
    if (key == "unique_atom") {
      q.unique_atom = parse_bool(key, value);
    } else if (key == "unique_coatom") {
      q.unique_coatom = parse_bool(key, value);
    } else if (key == "cdim") {
      q.cdim = parse_number<int>(key, value);
    } else if (key == "iso_to") {
      q.iso_to = FamilyMask(parse_number<std::uint32_t>(key, value));
    } else if (key == "status") {
      q.status = parse_status(value);
    } else {
      throw InputError("unknown query key '" + key + "'");
    }
  }
  return q;
}

std::vector<std::string> search(const Catalog& catalog, const Query& query) {
  const CatalogRecord* iso = nullptr;
  if (query.iso_to) {
    iso = find_isomorphic(catalog, *query.iso_to);
    if (iso == nullptr) return {};
  }
  std::vector<std::string> out;
  for (const CatalogRecord& r : catalog) {
    if (query.unique_atom && r.unique_atom != *query.unique_atom) continue;
    if (query.unique_coatom && r.unique_coatom != *query.unique_coatom) continue;
    if (query.cdim && r.cdim != *query.cdim) continue;
    if (query.status && r.status != *query.status) continue;
    if (iso != nullptr && &r != iso) continue;
    out.push_back(r.id);
  }
  return out;
}

}  // namespace cgw
