#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seqlab/hankel.hpp"
#include "seqlab/io.hpp"
#include "seqlab/suites.hpp"

using namespace seqlab;
using nlohmann::json;

namespace {

const char* kThueMorseDoc = R"({
  "k": 2,
  "rules": [
    {"residue": 0, "poly": [{"const": "0"}, {"const": "1"}]},
    {"residue": 1, "poly": [{"const": "1"}, {"const": "-1"}]}
  ]
})";

const char* kAffineDoc = R"({
  "k": 2,
  "rules": [
    {"residue": 0, "poly": [{"const": "1"}, {"builtin": {"name": "thue_morse"}}]},
    {"residue": 1, "poly": [{"builtin": {"name": "thue_morse"}}, {"const": "1"}]}
  ]
})";

bool agree(const Sequence& u, const Sequence& v, Index horizon) {
  for (Index n = 0; n < horizon; ++n) {
    if (u(n) != v(n)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parsing the thue-morse document") {
  const GeneratedSystem sys = parse_definition(kThueMorseDoc);
  const Sequence u = construct(sys);
  CHECK(u(0) == 0);
  CHECK(u(1) == 1);
  CHECK(u(2) == 1);
  CHECK(u(3) == 0);
  CHECK(agree(u, thue_morse(), 1024));
}

TEST_CASE("documents with builtin coefficients") {
  const Sequence u = construct(parse_definition(kAffineDoc));
  CHECK(u(0) == 1);
  CHECK(u(1) == 1);
  for (Index n = 0; n < 256; ++n) {
    REQUIRE(u(4 * n + 3) == u(n) + 1);
  }
}

TEST_CASE("parse diagnostics carry locations") {
  CHECK_THROWS_AS(parse_definition("not json at all"), DefinitionError);

  // Missing residue 1 of 2.
  try {
    parse_definition(R"({"k": 2, "rules": [
      {"residue": 0, "poly": [{"const": "0"}, {"const": "1"}]}]})");
    FAIL("expected DefinitionError");
  } catch (const DefinitionError& e) {
    CHECK(std::string(e.what()).find("residue 1") != std::string::npos);
  }

  // Duplicate residues.
  CHECK_THROWS_AS(parse_definition(R"({"k": 2, "rules": [
      {"residue": 0, "poly": [{"const": "0"}]},
      {"residue": 0, "poly": [{"const": "0"}]}]})"),
                  DefinitionError);

  // Non-decimal integer.
  try {
    parse_definition(R"({"k": 2, "rules": [
      {"residue": 0, "poly": [{"const": "12abc"}]},
      {"residue": 1, "poly": [{"const": "0"}]}]})");
    FAIL("expected DefinitionError");
  } catch (const DefinitionError& e) {
    const std::string what = e.what();
    CHECK(what.find("rules[0].poly[0]") != std::string::npos);
  }

  // Unknown builtin.
  try {
    parse_definition(R"({"k": 2, "rules": [
      {"residue": 0, "poly": [{"builtin": {"name": "mystery"}}]},
      {"residue": 1, "poly": [{"const": "0"}]}]})");
    FAIL("expected DefinitionError");
  } catch (const DefinitionError& e) {
    CHECK(std::string(e.what()).find("mystery") != std::string::npos);
  }
}

TEST_CASE("definition documents round-trip") {
  for (const char* text : {kThueMorseDoc, kAffineDoc}) {
    const SequenceDefinition def = parse_document(text);
    const std::string serialized = serialize_definition(def);
    const SequenceDefinition reparsed = parse_document(serialized);
    const Sequence a = construct(def.realize());
    const Sequence b = construct(reparsed.realize());
    CHECK(agree(a, b, 1024));
  }
}

TEST_CASE("seeds survive serialization") {
  SequenceDefinition def = parse_document(kThueMorseDoc);
  def.seeds[0] = Int::from_decimal("123456789012345678901234567890");
  const SequenceDefinition reparsed =
      parse_document(serialize_definition(def));
  REQUIRE(reparsed.seeds.count(0) == 1);
  CHECK(reparsed.seeds.at(0) ==
        Int::from_decimal("123456789012345678901234567890"));
}

TEST_CASE("DFAO documents round-trip") {
  const auto dfao = detect_automatic(thue_morse(), 2, 1 << 10, 16);
  REQUIRE(dfao.has_value());
  const DFAO restored = dfao_from_json(dfao_to_json(*dfao));
  CHECK(restored.state_count() == dfao->state_count());
  for (Index n = 0; n < 1 << 10; ++n) {
    REQUIRE(restored.evaluate(n) == thue_morse()(n));
  }
}

TEST_CASE("representation documents round-trip with exact rationals") {
  const Sequence d0 = det_row_sequence(0);
  const auto rep = guess_linear_representation(d0, 2, 1 << 12, 16, 1 << 13);
  REQUIRE(rep.has_value());
  const json doc = representation_to_json(*rep);
  // Rationals ride as numerator/denominator strings.
  CHECK(doc["matrices"][0][0][0].contains("num"));
  CHECK(doc["matrices"][0][0][0].contains("den"));
  const LinearRepresentation restored = representation_from_json(doc);
  CHECK(restored.rank == rep->rank);
  for (Index n = 0; n < 2048; ++n) {
    REQUIRE(rep_eval(restored, n) == d0(n));
  }
}

TEST_CASE("inline dfao and linrep coefficients realize") {
  const auto dfao = detect_automatic(periodic({1, 1, -1, -1}), 2, 1 << 10, 16);
  REQUIRE(dfao.has_value());
  json spec;
  spec["dfao"] = dfao_to_json(*dfao);
  const Sequence from_dfao = realize_coefficient(spec);
  CHECK(agree(from_dfao, periodic({1, 1, -1, -1}), 512));

  const auto rep = guess_linear_representation(digit_sum(2), 2, 256, 8, 1024);
  REQUIRE(rep.has_value());
  json rspec;
  rspec["linrep"] = representation_to_json(*rep);
  const Sequence from_rep = realize_coefficient(rspec);
  CHECK(agree(from_rep, digit_sum(2), 512));
}

TEST_CASE("report schema pins its field names") {
  VerificationReport report;
  report.suite = "demo";
  report.parameters = {{"horizon", 16}};
  report.items.push_back(CheckItem{"good", true, ""});
  report.items.push_back(CheckItem{"bad", false, "n=3"});
  const json doc = report.to_json();

  const std::vector<std::string> top = {"items",        "parameters",
                                        "status",       "suite",
                                        "tool_version", "wall_time_ms"};
  std::vector<std::string> got;
  for (const auto& [key, value] : doc.items()) got.push_back(key);
  CHECK(got == top);

  CHECK(doc["status"] == "fail");  // any failing item fails the report
  CHECK(doc["items"][0] == json({{"check", "good"}, {"status", "pass"}}));
  CHECK(doc["items"][1] ==
        json({{"check", "bad"},
              {"counterexample", "n=3"},
              {"status", "fail"}}));
  CHECK(doc["tool_version"] == kToolVersion);
}

TEST_CASE("suite registry") {
  CHECK(suite_names().size() == 8);
  CHECK_THROWS_AS(run_suite("no-such-suite"), std::invalid_argument);

  SuiteParams quick;
  quick.horizon = 1 << 8;
  const VerificationReport morphism = run_suite("morphism", quick);
  CHECK(morphism.overall_pass());
  CHECK(morphism.suite == "morphism");

  SuiteParams grid;
  grid.max_m = 8;
  grid.max_n = 16;
  CHECK(run_suite("oracle-grid", grid).overall_pass());
}
