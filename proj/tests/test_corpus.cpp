#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "bnet/bundle_io.hpp"
#include "bnet/corpus.hpp"
#include "bnet/delta_io.hpp"
#include "bnet/errors.hpp"

using namespace bnet;
namespace fs = std::filesystem;

TEST_CASE("grid network compiled from formulas equals the counting oracle") {
  bn_assr sys = assemble_bn(corpus::grid9_network());
  CHECK(sys.overall == corpus::grid9_oracle_matrix());
  bcn_assr controlled = assemble_bcn(corpus::grid9_controlled_network());
  CHECK(controlled.blocks[0] == corpus::grid9_oracle_matrix(1));
  CHECK(controlled.blocks[1] == corpus::grid9_oracle_matrix(0));
}

TEST_CASE("published grid tables are plausible transition data") {
  const auto& m = corpus::published_grid_bn();
  const auto& n = corpus::published_grid_controlled();
  CHECK(m[0] == 1);
  CHECK(m[511] == 512);
  CHECK(n[0] == 1);
  CHECK(n[511] == 512);
  for (int64_t v : m) CHECK((v >= 1 && v <= 512));
  for (int64_t v : n) CHECK((v >= 1 && v <= 512));
}

TEST_CASE("published tables agree with the oracle entrywise") {
  // Both appendix transcriptions reproduce the majority dynamics exactly;
  // every walkthrough discrepancy lives in the prose, not the tables.
  CHECK(corpus::compare_matrix("M", corpus::grid9_oracle_matrix(), corpus::published_grid_bn())
            .empty());
  CHECK(corpus::compare_matrix("N", corpus::grid9_oracle_matrix(1),
                               corpus::published_grid_controlled())
            .empty());
}

TEST_CASE("walkthrough report pins the known prose inconsistencies") {
  auto find = [](const std::vector<corpus::discrepancy>& rs, const std::string& subject) {
    for (const auto& r : rs)
      if (r.subject == subject) return r;
    FAIL("record not found: ", subject);
    return corpus::discrepancy{};
  };

  auto plain = corpus::grid9_walkthrough_report(false);
  // the published support {22,89,150,278} has a typo: column 86 maps into S,
  // column 89 does not
  corpus::discrepancy g2 = find(plain, "G2 = G1*M support");
  CHECK_FALSE(g2.match);
  CHECK(g2.computed == "{22,86,150,278}");
  // the claimed period-2 orbit fails at 164 vs 165, so the closure has size 3
  corpus::discrepancy g2m = find(plain, "G2*M = G1 support");
  CHECK_FALSE(g2m.match);
  CHECK(g2m.computed == "{43,143,164}");
  CHECK(find(plain, "closure size of {g1} under published M").computed == "3");

  auto controlled = corpus::grid9_walkthrough_report(true);
  CHECK(find(controlled, "closure size of {g1} under published {N,M}").computed == "15");
  CHECK(find(controlled, "G1*N = G3").computed == "{278}");
  CHECK(find(controlled, "G4*N = G5").match);
  CHECK(find(controlled, "G7*N = G7").match);
  CHECK(find(controlled, "G5 member of derived closure").match);
  CHECK_FALSE(find(controlled, "G2 member of derived closure").match);
}

TEST_CASE("worked 4-node fixtures are internally consistent") {
  bn_assr sys = assemble_bn(corpus::example_3_1_5_network());
  CHECK(sys.overall == corpus::example_3_1_5_published_m());
  function_set fs(4);
  for (const auto& [name, f] : corpus::example_3_1_5_aggregating_functions())
    fs.add(structure_matrix(f, {std::vector<std::string>{"x1", "x2", "x3", "x4"}}), name);
  CHECK(combined_structure(fs) == corpus::example_3_1_5_published_q());
}

TEST_CASE("three-rotation system blocks") {
  bcn_assr sys = corpus::example_5_5_system();
  CHECK(sys.blocks[0] == logical_matrix::delta(8, {2, 3, 1, 4, 5, 6, 7, 8}));
  CHECK(sys.blocks[1] == logical_matrix::delta(8, {2, 1, 3, 4, 5, 6, 7, 8}));
  CHECK(sys.blocks[2] == logical_matrix::identity(8));
  CHECK(sys.blocks[3] == logical_matrix::delta(8, {3, 2, 1, 4, 5, 6, 7, 8}));
  CHECK(corpus::example_5_5_outputs().combined ==
        logical_matrix::delta(2, {1, 2, 1, 2, 2, 2, 2, 2}));
}

TEST_CASE("matrix comparison reports mismatching columns only") {
  logical_matrix a = logical_matrix::delta(4, {1, 2, 3, 4});
  std::vector<int64_t> published{1, 2, 4, 4};
  auto recs = corpus::compare_matrix("demo", a, published);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].kind == "matrix_entry");
  CHECK(recs[0].column == 3);
  CHECK(recs[0].expected == "4");
  CHECK(recs[0].computed == "3");
  CHECK_FALSE(recs[0].match);
  std::string jsonl = corpus::to_jsonl(recs);
  CHECK(jsonl.find("\"column\":3") != std::string::npos);
}

TEST_CASE("corpus writer produces parseable fixtures") {
  fs::path dir = fs::temp_directory_path() / "bnet_corpus_test";
  fs::remove_all(dir);

  for (const std::string& name : corpus::corpus_names()) {
    auto files = corpus::write_corpus(name, (dir / name).string());
    CHECK(!files.empty());
    for (const auto& f : files) CHECK(fs::exists(dir / name / f));
  }

  // the .bn fixtures compile
  {
    std::ifstream in(dir / "grid-9" / "grid-9.bn");
    std::string text(std::istreambuf_iterator<char>(in), {});
    CHECK(assemble_bn(parse_network(text)).overall == corpus::grid9_oracle_matrix());
  }
  // the funcs files parse as 2 x 2^n stanzas
  {
    std::ifstream in(dir / "grid-9" / "g1.funcs");
    std::string text(std::istreambuf_iterator<char>(in), {});
    auto stanzas = parse_stanzas(text);
    REQUIRE(stanzas.size() == 1);
    CHECK(stanzas[0].logical() == index_function(corpus::grid9_target_states()));
  }
  // the assr fixture round trips
  {
    std::ifstream in(dir / "example-5.5" / "example-5.5.assr");
    std::string text(std::istreambuf_iterator<char>(in), {});
    assr_file f = parse_assr(text);
    CHECK(f.sys.transition == corpus::example_5_5_system().transition);
    REQUIRE(f.outputs.has_value());
    CHECK(f.outputs->combined == corpus::example_5_5_outputs().combined);
  }
  // discrepancy reports exist for the grid fixtures
  CHECK(fs::exists(dir / "grid-9" / "discrepancy.jsonl"));
  CHECK(fs::exists(dir / "grid-9-controlled" / "discrepancy.jsonl"));

  CHECK_THROWS_AS(corpus::write_corpus("no-such-example", dir.string()), error);
  fs::remove_all(dir);
}
