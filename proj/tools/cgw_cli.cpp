// Command-line front end: catalog generation and lookup, verification of
// circle configurations, obstruction scans, derived configurations, TikZ
// export and the local HTTP service.
//
// Exit codes: 0 success, 2 verification failed or marginal, 1 error.

#include <CLI11.hpp>

#include <cmath>
#include <limits>
#include <map>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "cgw/catalog.hpp"
#include "cgw/dimension.hpp"
#include "cgw/errors.hpp"
#include "cgw/implications.hpp"
#include "cgw/representation.hpp"
#include "cgw/service.hpp"
#include "cgw/tikz.hpp"

namespace {

using namespace cgw;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRejected = 2;

Catalog load_or_build(const std::string& catalog_file, int n) {
  if (catalog_file.empty()) return build_catalog(n);
  std::ifstream in(catalog_file);
  if (!in) throw InputError("cannot open catalog " + catalog_file);
  Catalog catalog = read_catalog(in);
  if (catalog.empty() || catalog.front().n != n) {
    throw InputError("catalog " + catalog_file + " does not hold " + std::to_string(n) +
                     "-element geometries");
  }
  return catalog;
}

std::string join(const std::vector<std::string>& items, const char* sep = " ") {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s.empty() ? "\xE2\x88\x85" : s;
  }
  return out;
}

void print_record(std::ostream& out, const CatalogRecord& r) {
  const ConvexGeometry g = r.geometry();
  out << r.id << "  family_mask=" << r.family.bits() << "  n=" << r.n << "\n";
  out << "  closed sets (" << r.closed_sets.size() << "): " << join(r.closed_sets) << "\n";
  out << "  basis:";
  if (r.basis.empty()) out << " (none)";
  for (const auto& [premise, conclusion] : r.basis) out << " " << premise << "->" << conclusion;
  out << "\n  meet-irreducibles: " << join(r.meet_irreducibles) << "\n";
  out << "  cdim=" << r.cdim << "  unique_atom=" << (r.unique_atom ? "yes" : "no")
      << "  unique_coatom=" << (r.unique_coatom ? "yes" : "no") << "\n";
  std::vector<std::string> tight;
  for (const UnitImplication& t : tight_implications(g)) {
    if (t.premise.size() >= 2) tight.push_back(format_implication(t));
  }
  out << "  tight implications with premise >= 2: " << (tight.empty() ? "(none)" : join(tight))
      << "\n";
  out << "  status: " << status_name(r.status) << "\n";
  for (const ObstructionCertificate& c : detect_obstructions(g)) {
    out << "  certificate: " << certificate_to_json(c).dump() << "\n";
  }
}

void print_report(std::ostream& out, const VerificationReport& r) {
  out << "verdict: " << verdict_name(r.verdict) << "\n";
  out << "target family_mask: " << r.target.bits() << "\n";
  if (r.induced) out << "induced family_mask: " << r.induced->bits() << "\n";
  for (const Implication& imp : r.violated_implications) {
    out << "violated implication: " << format_implication(imp) << "\n";
  }
  for (SubsetMask m : r.non_closed_meet_irreducibles) {
    out << "meet-irreducible not closed: " << subset_display(m) << "\n";
  }
  for (const MarginalPair& m : r.marginal_pairs) {
    out << "marginal: " << GroundSet::label(m.element) << " vs hull of "
        << subset_display(m.subset) << " (margin " << m.margin << ")\n";
  }
}

// Smallest normalized distance of any containment decision from the
// marginal band; larger is easier to see and to edit.
double robustness(const Configuration& conf) {
  double best = std::numeric_limits<double>::infinity();
  const int n = conf.ground().size();
  for (std::uint32_t y = 1; y < (1u << n); ++y) {
    const auto hull = conf.select(SubsetMask(y));
    for (Element x = 0; x < n; ++x) {
      if ((y >> x) & 1u) continue;
      const double m = disk_in_hull(conf.circle(x), hull, conf.scale()).margin;
      best = std::min(best, std::abs(m) / conf.scale());
    }
  }
  return best;
}

// Random search for configurations. Keeps the most robust configuration per
// geometry and writes it as <dir>/<id>.json in the catalog labeling.
int sample_configurations(int n, long samples, unsigned seed, const std::string& dir) {
  Catalog catalog = build_catalog(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::uniform_real_distribution<double> radius(0.0, 4.0);
  std::bernoulli_distribution point(0.3);
  const auto grid = [](double v) { return std::round(v * 100.0) / 100.0; };
  std::map<std::size_t, std::pair<double, Configuration>> best;
  const GroundSet ground(n);
  for (long s = 0; s < samples; ++s) {
    std::vector<Circle> circles;
    for (int i = 0; i < n; ++i) {
      circles.push_back({grid(coord(rng)), grid(coord(rng)), point(rng) ? 0.0 : grid(radius(rng))});
    }
    const Configuration conf(ground, circles);
    const InducedAlignment induced = induced_alignment(conf);
    if (!induced.marginal.empty()) continue;
    const CatalogRecord* match = find_isomorphic(catalog, induced.family);
    if (match == nullptr) continue;
    const auto slot = static_cast<std::size_t>(match - catalog.data());
    const double score = robustness(conf);
    auto it = best.find(slot);
    if (it != best.end() && it->second.first >= score) continue;
    const auto perm = find_isomorphism(induced.family, match->family, ground);
    best.insert_or_assign(slot, std::pair{score, relabel(conf, *perm)});
  }
  std::filesystem::create_directories(dir);
  for (const auto& [slot, entry] : best) {
    const CatalogRecord& r = catalog[slot];
    if (verify_full(r.geometry(), entry.second).verdict != Verdict::kVerified) continue;
    write_configuration_file(std::filesystem::path(dir) / (r.id + ".json"), entry.second);
  }
  std::cerr << "covered " << best.size() << " of " << catalog.size() << " geometries\n";
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    if (!best.count(i)) std::cerr << "  missing " << catalog[i].id << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex geometry workbench: catalogs, circle representations, obstructions"};
  app.require_subcommand(1);

  int n = 5;
  std::string out_file;
  std::string catalog_file;
  std::string fixtures_dir;

  auto* enumerate = app.add_subcommand("enumerate", "Write the catalog of n-element geometries");
  enumerate->add_option("-n", n, "Ground set size (1..5)")->required();
  enumerate->add_option("-o,--output", out_file, "Catalog file (JSON lines)")->required();
  enumerate->add_option("--fixtures", fixtures_dir, "Directory of configurations to attach");

  std::string id;
  std::optional<std::uint32_t> mask;
  bool as_json = false;
  auto* describe = app.add_subcommand("describe", "Show one geometry");
  auto* id_opt = describe->add_option("--id", id, "Geometry id, e.g. G5-17");
  auto* mask_opt = describe->add_option("--mask", mask, "Family mask (any labeling)");
  id_opt->excludes(mask_opt);
  describe->add_option("--catalog", catalog_file, "Read records from this catalog file");
  describe->add_flag("--json", as_json, "Print the record as JSON");

  std::string circles_file;
  bool by_props = false;
  auto* verify = app.add_subcommand("verify", "Check circles against a geometry");
  verify->add_option("--geometry", id, "Geometry id")->required();
  verify->add_option("--circles", circles_file, "Configuration file")->required();
  verify->add_flag("--by-propositions", by_props, "Use the rule/meet-irreducible checks");
  verify->add_option("--catalog", catalog_file, "Read records from this catalog file");

  auto* obstructions = app.add_subcommand("obstructions", "List geometries with certificates");
  obstructions->add_option("-n", n, "Ground set size")->required();

  std::string from_file;
  std::string strategy_text;
  auto* derive = app.add_subcommand("derive", "Build a candidate configuration with one more circle");
  derive->add_option("--from", from_file, "Configuration file")->required();
  derive->add_option("--target", id, "Target geometry id")->required();
  derive->add_option("--strategy", strategy_text, "atom | coatom | double:<el> | nest:<el>")
      ->required();
  derive->add_option("-o,--output", out_file, "Write the configuration here (default stdout)");

  bool q_atom = false, q_coatom = false;
  std::optional<int> q_cdim;
  std::optional<std::uint32_t> q_iso;
  std::string q_status;
  auto* search_cmd = app.add_subcommand("search", "Search the catalog (filters combine)");
  search_cmd->add_option("-n", n, "Ground set size")->required();
  search_cmd->add_flag("--unique-atom", q_atom, "Exactly one singleton closed set");
  search_cmd->add_flag("--unique-coatom", q_coatom, "Exactly one closed set of size n-1");
  search_cmd->add_option("--cdim", q_cdim, "Convex dimension");
  search_cmd->add_option("--iso-to", q_iso, "Family mask to match up to relabeling");
  search_cmd->add_option("--status", q_status, "verified | impossible | open");
  search_cmd->add_option("--catalog", catalog_file, "Read records from this catalog file");
  search_cmd->add_option("--fixtures", fixtures_dir, "Directory of configurations to attach");

  double width = 8.0;
  auto* tikz = app.add_subcommand("tikz", "Export a configuration as TikZ");
  tikz->add_option("--circles", circles_file, "Configuration file")->required();
  tikz->add_option("--width", width, "Drawing width in cm");
  tikz->add_option("-o,--output", out_file, "Output file (default stdout)");

  long samples = 100000;
  unsigned seed = 1;
  auto* sample = app.add_subcommand("sample", "Random search for configurations, one per geometry");
  sample->add_option("-n", n, "Number of circles")->required();
  sample->add_option("--samples", samples, "Number of random configurations");
  sample->add_option("--seed", seed, "Random seed");
  sample->add_option("-o,--output", out_file, "Directory for <id>.json files")->required();

  int port = kDefaultPort;
  auto* serve_cmd = app.add_subcommand("serve", "Run the local HTTP API");
  serve_cmd->add_option("--port", port, "Port");
  serve_cmd->add_option("--fixtures", fixtures_dir, "Root with n4/, n5/ configuration dirs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (enumerate->parsed()) {
      Catalog catalog = build_catalog(n);
      if (!fixtures_dir.empty()) attach_fixture_dir(catalog, fixtures_dir);
      std::ofstream out(out_file);
      if (!out) throw InputError("cannot write " + out_file);
      write_catalog(out, catalog);
      std::cerr << "wrote " << catalog.size() << " geometries to " << out_file << "\n";
      return kExitOk;
    }

    if (describe->parsed()) {
      if (id.empty() && !mask) throw InputError("describe needs --id or --mask");
      const int size = mask ? infer_ground(FamilyMask(*mask)).size() : parse_record_id(id);
      const Catalog catalog = load_or_build(catalog_file, size);
      const CatalogRecord* record = nullptr;
      if (mask) {
        record = find_isomorphic(catalog, FamilyMask(*mask));
        if (record == nullptr) {
          throw InputError("mask " + std::to_string(*mask) + " is not a convex geometry");
        }
      } else {
        record = &find_record(catalog, id);
      }
      if (as_json) {
        std::cout << record_to_json(*record).dump(2) << "\n";
      } else {
        print_record(std::cout, *record);
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      const Catalog catalog = load_or_build(catalog_file, parse_record_id(id));
      const ConvexGeometry g = find_record(catalog, id).geometry();
      const Configuration conf = read_configuration_file(circles_file);
      const VerificationReport report =
          by_props ? verify_by_propositions(g, generate_basis(g), conf) : verify_full(g, conf);
      print_report(std::cout, report);
      return report.verdict == Verdict::kVerified ? kExitOk : kExitRejected;
    }

    if (obstructions->parsed()) {
      int flagged = 0;
      for (const CatalogRecord& r : build_catalog(n)) {
        if (!r.certificate) continue;
        ++flagged;
        std::cout << r.id << " cdim=" << r.cdim;
        for (const ObstructionCertificate& c : detect_obstructions(r.geometry())) {
          std::cout << "  " << pattern_name(c.pattern) << ":";
          for (const UnitImplication& u : c.implications) std::cout << " " << format_implication(u);
        }
        std::cout << "\n";
      }
      std::cerr << flagged << " geometries on " << n << " elements carry certificates\n";
      return kExitOk;
    }

    if (derive->parsed()) {
      const int size = parse_record_id(id);
      const Catalog catalog = build_catalog(size);
      const ConvexGeometry target = find_record(catalog, id).geometry();
      const Configuration rep = read_configuration_file(from_file);
      Configuration candidate =
          derive_representation(rep, target, parse_strategy(strategy_text, rep.ground()));
      const FamilyMask induced = induced_alignment(candidate).family;
      if (auto perm = find_isomorphism(induced, target.family(), target.ground())) {
        candidate = relabel(candidate, *perm);
      }
      const VerificationReport report = verify_full(target, candidate);
      const std::string text = configuration_to_json(candidate).dump(2) + "\n";
      if (out_file.empty()) {
        std::cout << text;
      } else {
        std::ofstream(out_file) << text;
      }
      std::cerr << "candidate for " << id << ": " << verdict_name(report.verdict) << "\n";
      return report.verdict == Verdict::kVerified ? kExitOk : kExitRejected;
    }

    if (search_cmd->parsed()) {
      Catalog catalog = load_or_build(catalog_file, n);
      if (!fixtures_dir.empty()) attach_fixture_dir(catalog, fixtures_dir);
      Query q;
      if (q_atom) q.unique_atom = true;
      if (q_coatom) q.unique_coatom = true;
      q.cdim = q_cdim;
      if (q_iso) q.iso_to = FamilyMask(*q_iso);
      if (!q_status.empty()) q.status = parse_status(q_status);
      for (const std::string& hit : search(catalog, q)) std::cout << hit << "\n";
      return kExitOk;
    }

    if (tikz->parsed()) {
      const std::string text = export_tikz(read_configuration_file(circles_file), width);
      if (out_file.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_file, std::ios::binary);
        if (!out) throw InputError("cannot write " + out_file);
        out << text;
      }
      return kExitOk;
    }

    if (sample->parsed()) return sample_configurations(n, samples, seed, out_file);

    if (serve_cmd->parsed()) {
      std::optional<std::filesystem::path> root;
      if (!fixtures_dir.empty()) root = fixtures_dir;
      const Workbench bench(root);
      std::cerr << "serving on http://127.0.0.1:" << port << "\n";
      serve(bench, port);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
