#pragma once

// Document formats: sequence-definition files, DFAO and linear-representation
// files, and machine-readable verification reports. All integer values are
// encoded as decimal strings so arbitrary precision survives any parser;
// structural fields (ranks, state ids, horizons) are plain JSON numbers.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqlab/generated_system.hpp"
#include "seqlab/kernel.hpp"

namespace seqlab {

inline constexpr const char* kToolVersion = "0.1.0";

// Round-trippable model of a definition document.
struct SequenceDefinition {
  struct Rule {
    Index residue = 0;
    Index shift = 0;
    std::vector<nlohmann::json> poly;  // coefficient specs, index = degree
  };

  Index k = 2;
  Index cutoff = 0;
  std::vector<Rule> rules;
  std::map<Index, Int> seeds;

  GeneratedSystem realize() const;
  nlohmann::json to_json() const;
};

// Parses and validates a definition document; diagnostics carry the location
// of the offending field. Throws DefinitionError.
SequenceDefinition parse_document(const std::string& text);

// Document text straight to a constructible system.
GeneratedSystem parse_definition(const std::string& text);

std::string serialize_definition(const SequenceDefinition& definition);

// One coefficient spec (const / periodic / builtin / dfao / linrep) to a
// Sequence; `location` seeds the diagnostics.
Sequence realize_coefficient(const nlohmann::json& spec,
                             const std::string& location = "coefficient");

nlohmann::json dfao_to_json(const DFAO& dfao);
DFAO dfao_from_json(const nlohmann::json& doc);

nlohmann::json representation_to_json(const LinearRepresentation& rep);
LinearRepresentation representation_from_json(const nlohmann::json& doc);

struct CheckItem {
  std::string id;
  bool pass = false;
  std::string counterexample;  // empty when the check passed
};

struct VerificationReport {
  std::string suite;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<CheckItem> items;
  std::string tool_version = kToolVersion;
  double wall_time_ms = 0;

  bool overall_pass() const;
  nlohmann::json to_json() const;
};

}  // namespace seqlab
