#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cgw/catalog.hpp"
#include "cgw/errors.hpp"

using namespace cgw;

namespace {

const std::string kFixtures = CGW_FIXTURE_DIR;

const Catalog& five() {
  static const Catalog c = build_catalog(5);
  return c;
}

}  // namespace

TEST_CASE("catalog sizes and statuses") {
  const Catalog four = build_catalog(4);
  CHECK(four.size() == 34);
  for (const CatalogRecord& r : four) CHECK(r.status != Status::kImpossible);
  CHECK(five().size() == 672);
  int impossible = 0;
  int cdim4 = 0;
  int cdim5 = 0;
  for (const CatalogRecord& r : five()) {
    if (r.status != Status::kImpossible) continue;
    ++impossible;
    cdim4 += r.cdim == 4;
    cdim5 += r.cdim == 5;
    CHECK(r.cdim > 3);
  }
  CHECK(impossible == 7);
  CHECK(cdim4 == 3);
  CHECK(cdim5 == 1);
  CHECK_THROWS_AS(build_catalog(6), InputError);
}

TEST_CASE("ids follow catalog order") {
  const Catalog three = build_catalog(3);
  for (std::size_t i = 0; i < three.size(); ++i) {
    CHECK(three[i].id == "G3-" + std::to_string(i + 1));
  }
  CHECK(parse_record_id("G5-17") == 5);
  CHECK_THROWS_AS(parse_record_id("G5"), InputError);
  CHECK_THROWS_AS(parse_record_id("X5-1"), InputError);
  CHECK_THROWS_AS(parse_record_id("G9-1"), InputError);
  CHECK_THROWS_AS(find_record(three, "G3-999"), NotFoundError);
}

TEST_CASE("derived fields are recomputable") {
  for (const CatalogRecord& r : five()) CHECK(derived_fields_consistent(r));
  CatalogRecord tampered = five()[100];
  tampered.cdim += 1;
  CHECK_FALSE(derived_fields_consistent(tampered));
}

TEST_CASE("catalog round trip") {
  Catalog four = build_catalog(4);
  attach_fixture_dir(four, kFixtures + "/n4");
  std::stringstream buffer;
  write_catalog(buffer, four);
  CHECK(read_catalog(buffer) == four);

  std::stringstream big;
  write_catalog(big, five());
  CHECK(read_catalog(big) == five());

  std::stringstream broken("{\"id\": \"G1-1\"}\n");
  CHECK_THROWS_AS(read_catalog(broken), InputError);
}

TEST_CASE("configuration files") {
  const Configuration chain = read_configuration_file(kFixtures + "/n2/chain.json");
  CHECK(chain.ground().size() == 2);
  CHECK(chain.circle(0).r == 0.0);
  const auto j = configuration_to_json(chain);
  CHECK(configuration_from_json(j) == chain);

  // Labels in any order, or a bare circle array.
  const auto shuffled = nlohmann::json::parse(
      R"({"circles":[{"label":"b","x":0,"y":0,"r":1},{"label":"a","x":0.3,"y":0,"r":0}]})");
  CHECK(configuration_from_json(shuffled) == chain);
  const auto bare = nlohmann::json::parse(
      R"([{"label":"a","x":0.3,"y":0,"r":0},{"label":"b","x":0,"y":0,"r":1}])");
  CHECK(configuration_from_json(bare) == chain);

  for (const char* bad : {
           R"({"circles":[]})",
           R"({"circles":[{"label":"a","x":0,"y":0,"r":-1}]})",
           R"({"circles":[{"label":"a","x":0,"y":0,"r":1},{"label":"a","x":1,"y":0,"r":1}]})",
           R"({"circles":[{"label":"c","x":0,"y":0,"r":1}]})",
           R"({"n":3,"circles":[{"label":"a","x":0,"y":0,"r":1}]})",
           R"({"circles":[{"label":"a","x":"0","y":0,"r":1}]})",
       }) {
    CHECK_THROWS_AS(configuration_from_json(nlohmann::json::parse(bad)), InputError);
  }
  CHECK_THROWS_AS(read_configuration_file(kFixtures + "/does-not-exist.json"), InputError);
}

TEST_CASE("12 significant digits on disk") {
  const Configuration conf(GroundSet(1), {{1.0 / 3.0, 2.0 / 3.0, 0.1234567890123456}});
  const Configuration back = configuration_from_json(configuration_to_json(conf));
  CHECK(back.circle(0).cx == 0.333333333333);
  CHECK(back.circle(0).r == 0.123456789012);
}

TEST_CASE("shipped fixtures attach and verify") {
  for (int n : {2, 3, 4, 5}) {
    Catalog catalog = build_catalog(n);
    std::size_t files = 0;
    for (const auto& e : std::filesystem::directory_iterator(kFixtures + "/n" + std::to_string(n))) {
      files += e.path().extension() == ".json";
    }
    const auto ids = attach_fixture_dir(catalog, kFixtures + "/n" + std::to_string(n));
    CHECK(ids.size() == files);
    for (const CatalogRecord& r : catalog) {
      CHECK((r.status == Status::kVerified) == r.representation.has_value());
      if (r.representation) {
        CHECK(verify_full(r.geometry(), *r.representation).verdict == Verdict::kVerified);
      }
    }
  }
}

TEST_CASE("certificates round trip and mark impossible records") {
  for (const CatalogRecord& r : five()) {
    CHECK((r.status == Status::kImpossible) == r.certificate.has_value());
    if (r.certificate) {
      CHECK(certificate_from_json(certificate_to_json(*r.certificate)) == *r.certificate);
    }
  }
}

TEST_CASE("search") {
  Query q;
  q.cdim = 1;
  CHECK(search(five(), q).size() == 1);

  Query none;
  none.cdim = 3;
  none.status = Status::kImpossible;
  CHECK(search(five(), none).empty());

  std::mt19937 rng(53);
  const GroundSet g(5);
  for (int i = 0; i < 100; ++i) {
    const CatalogRecord& r = five()[rng() % five().size()];
    Query iso;
    iso.iso_to = permute_family(r.family, all_permutations(g)[rng() % 120]);
    CHECK(search(five(), iso) == std::vector{r.id});
  }

  Query both;
  both.unique_atom = true;
  both.unique_coatom = true;
  for (const std::string& id : search(five(), both)) {
    const CatalogRecord& r = find_record(five(), id);
    CHECK(r.unique_atom);
    CHECK(r.unique_coatom);
  }

  const Query parsed = parse_query({{"unique_atom", "true"}, {"cdim", "2"}, {"status", "open"}});
  CHECK(parsed.unique_atom == true);
  CHECK(parsed.cdim == 2);
  CHECK(parsed.status == Status::kOpen);
  CHECK_THROWS_AS(parse_query({{"colour", "red"}}), InputError);
  CHECK_THROWS_AS(parse_query({{"cdim", "two"}}), InputError);
  CHECK_THROWS_AS(parse_query({{"status", "maybe"}}), InputError);
}

TEST_CASE("unique atom and coatom flags count singletons and (n-1)-sets") {
  for (const CatalogRecord& r : five()) {
    int atoms = 0;
    int coatoms = 0;
    for (const std::string& s : r.closed_sets) {
      atoms += s.size() == 1;
      coatoms += static_cast<int>(s.size()) == r.n - 1;
    }
    CHECK(r.unique_atom == (atoms == 1));
    CHECK(r.unique_coatom == (coatoms == 1));
  }
}
