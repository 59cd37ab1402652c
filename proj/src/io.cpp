#include "seqlab/io.hpp"

#include <algorithm>
#include <sstream>

namespace seqlab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& location, const std::string& what) {
  throw DefinitionError(location + ": " + what);
}

Int read_int(const json& j, const std::string& location) {
  if (j.is_string()) {
    try {
      return Int::from_decimal(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(location, e.what());
    }
  }
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  fail(location, "expected a decimal integer string");
}

Index read_index(const json& j, const std::string& location) {
  const Int v = read_int(j, location);
  try {
    return v.to_int64();
  } catch (const std::overflow_error&) {
    fail(location, "index out of range");
  }
}

std::vector<Int> read_int_list(const json& j, const std::string& location) {
  if (!j.is_array()) fail(location, "expected an array of integers");
  std::vector<Int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(read_int(j[i], location + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json write_int(const Int& v) { return v.str(); }

json rational_to_json(const Rat& r) {
  return json{{"num", r.numerator().str()}, {"den", r.denominator().str()}};
}

Rat rational_from_json(const json& j, const std::string& location) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
    fail(location, "expected {num, den}");
  }
  const Int num = read_int(j["num"], location + ".num");
  const Int den = read_int(j["den"], location + ".den");
  if (den.is_zero()) fail(location, "zero denominator");
  return Rat(num, den);
}

}  // namespace

Sequence realize_coefficient(const nlohmann::json& spec,
                             const std::string& location) {
  if (spec.is_string() || spec.is_number_integer()) {
    return constant(read_int(spec, location));  // bare constant shorthand
  }
  if (!spec.is_object() || spec.size() != 1) {
    fail(location,
         "expected one of const / periodic / builtin / dfao / linrep");
  }
  const auto& [kind, body] = *spec.items().begin();
  if (kind == "const") {
    return constant(read_int(body, location + ".const"));
  }
  if (kind == "periodic") {
    if (!body.is_object() || !body.contains("values")) {
      fail(location + ".periodic", "expected {values, preperiod?}");
    }
    std::vector<Int> cycle =
        read_int_list(body["values"], location + ".periodic.values");
    std::vector<Int> pre;
    if (body.contains("preperiod")) {
      pre = read_int_list(body["preperiod"], location + ".periodic.preperiod");
    }
    if (cycle.empty()) fail(location + ".periodic", "cycle must be nonempty");
    return periodic(std::move(cycle), std::move(pre));
  }
  if (kind == "builtin") {
    if (!body.is_object() || !body.contains("name")) {
      fail(location + ".builtin", "expected {name, ...}");
    }
    const std::string name = body["name"].get<std::string>();
    BuiltinParams params;
    if (body.contains("base")) {
      params.base = read_index(body["base"], location + ".builtin.base");
    } else if (body.contains("k")) {
      params.base = read_index(body["k"], location + ".builtin.k");
    }
    if (body.contains("value")) {
      params.value = read_int(body["value"], location + ".builtin.value");
    }
    if (body.contains("values")) {
      params.cycle =
          read_int_list(body["values"], location + ".builtin.values");
    }
    if (body.contains("preperiod")) {
      params.preperiod =
          read_int_list(body["preperiod"], location + ".builtin.preperiod");
    }
    try {
      return builtin(name, params);
    } catch (const DefinitionError& e) {
      fail(location + ".builtin", e.what());
    }
  }
  if (kind == "dfao") {
    const DFAO dfao = dfao_from_json(body);
    return Sequence("dfao[" + std::to_string(dfao.state_count()) + " states]",
                    [dfao](Index n) { return dfao.evaluate(n); });
  }
  if (kind == "linrep") {
    const LinearRepresentation rep = representation_from_json(body);
    return Sequence("linrep[rank " + std::to_string(rep.rank) + "]",
                    [rep](Index n) { return rep_eval(rep, n); });
  }
  fail(location, "unknown coefficient kind '" + kind + "'");
}

GeneratedSystem SequenceDefinition::realize() const {
  std::vector<GeneratedRule> realized;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const auto& rule = rules[r];
    std::vector<Sequence> coeffs;
    const std::string base =
        "rules[" + std::to_string(r) + "].poly";
    if (rule.poly.empty()) fail(base, "polynomial needs a coefficient");
    for (std::size_t i = 0; i < rule.poly.size(); ++i) {
      coeffs.push_back(realize_coefficient(
          rule.poly[i], base + "[" + std::to_string(i) + "]"));
    }
    realized.push_back(GeneratedRule{rule.residue,
                                     SequencePolynomial(std::move(coeffs)),
                                     rule.shift});
  }
  return GeneratedSystem(k, std::move(realized), cutoff, seeds);
}

nlohmann::json SequenceDefinition::to_json() const {
  json doc;
  doc["k"] = k;
  doc["cutoff"] = cutoff;
  doc["rules"] = json::array();
  for (const auto& rule : rules) {
    json jr;
    jr["residue"] = rule.residue;
    jr["shift"] = rule.shift;
    jr["poly"] = rule.poly;
    doc["rules"].push_back(std::move(jr));
  }
  json seeds_doc = json::object();
  for (const auto& [index, value] : seeds) {
    seeds_doc[std::to_string(index)] = write_int(value);
  }
  doc["seeds"] = std::move(seeds_doc);
  return doc;
}

SequenceDefinition parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DefinitionError(std::string("document is not valid JSON: ") +
                          e.what());
  }
  if (!doc.is_object()) fail("document", "expected a JSON object");
  if (!doc.contains("k")) fail("document", "missing field 'k'");
  if (!doc.contains("rules")) fail("document", "missing field 'rules'");

  SequenceDefinition def;
  def.k = read_index(doc["k"], "k");
  if (def.k < 2) fail("k", "must be >= 2");
  def.cutoff =
      doc.contains("cutoff") ? read_index(doc["cutoff"], "cutoff") : 0;
  if (def.cutoff < 0) fail("cutoff", "must be >= 0");

  if (!doc["rules"].is_array()) fail("rules", "expected an array");
  std::vector<bool> seen(static_cast<std::size_t>(def.k), false);
  for (std::size_t r = 0; r < doc["rules"].size(); ++r) {
    const std::string base = "rules[" + std::to_string(r) + "]";
    const json& jr = doc["rules"][r];
    if (!jr.is_object()) fail(base, "expected an object");
    if (!jr.contains("residue")) fail(base, "missing field 'residue'");
    if (!jr.contains("poly")) fail(base, "missing field 'poly'");
    SequenceDefinition::Rule rule;
    rule.residue = read_index(jr["residue"], base + ".residue");
    if (rule.residue < 0 || rule.residue >= def.k) {
      fail(base + ".residue", "outside [0, k)");
    }
    if (seen[static_cast<std::size_t>(rule.residue)]) {
      fail(base + ".residue",
           "duplicate rule for residue " + std::to_string(rule.residue));
    }
    seen[static_cast<std::size_t>(rule.residue)] = true;
    rule.shift = jr.contains("shift") ? read_index(jr["shift"], base + ".shift")
                                      : 0;
    if (rule.shift < 0) fail(base + ".shift", "must be >= 0");
    if (!jr["poly"].is_array() || jr["poly"].empty()) {
      fail(base + ".poly", "expected a nonempty array of coefficient specs");
    }
    for (const auto& c : jr["poly"]) rule.poly.push_back(c);
    def.rules.push_back(std::move(rule));
  }
  for (Index r = 0; r < def.k; ++r) {
    if (!seen[static_cast<std::size_t>(r)]) {
      fail("rules", "missing rule for residue " + std::to_string(r));
    }
  }

  if (doc.contains("seeds")) {
    if (!doc["seeds"].is_object()) fail("seeds", "expected an object");
    for (const auto& [key, value] : doc["seeds"].items()) {
      Index index = 0;
      try {
        index = Int::from_decimal(key).to_int64();
      } catch (const std::exception&) {
        fail("seeds", "bad seed index '" + key + "'");
      }
      if (index < 0) fail("seeds", "seed index must be nonnegative");
      def.seeds[index] = read_int(value, "seeds['" + key + "']");
    }
  }

  // Realize every coefficient now so malformed specs surface as parse
  // diagnostics rather than first-evaluation surprises.
  def.realize();
  return def;
}

GeneratedSystem parse_definition(const std::string& text) {
  return parse_document(text).realize();
}

std::string serialize_definition(const SequenceDefinition& definition) {
  return definition.to_json().dump(2);
}

nlohmann::json dfao_to_json(const DFAO& dfao) {
  json doc;
  doc["k"] = dfao.k;
  doc["horizon"] = dfao.horizon;
  doc["states"] = json::array();
  for (Index s = 0; s < dfao.state_count(); ++s) {
    json state;
    state["id"] = s;
    state["output"] = write_int(dfao.outputs[static_cast<std::size_t>(s)]);
    state["kernel"] = {
        {"level", dfao.representatives[static_cast<std::size_t>(s)].level},
        {"offset",
         Int(dfao.representatives[static_cast<std::size_t>(s)].offset).str()}};
    doc["states"].push_back(std::move(state));
  }
  doc["transitions"] = dfao.transitions;
  return doc;
}

DFAO dfao_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("states") ||
      !doc.contains("transitions")) {
    fail("dfao", "expected {k, states, transitions}");
  }
  DFAO dfao;
  dfao.k = doc.contains("k") ? read_index(doc["k"], "dfao.k") : 2;
  if (dfao.k < 2) fail("dfao.k", "must be >= 2");
  dfao.horizon =
      doc.contains("horizon") ? read_index(doc["horizon"], "dfao.horizon") : 0;
  for (std::size_t s = 0; s < doc["states"].size(); ++s) {
    const json& state = doc["states"][s];
    dfao.outputs.push_back(
        read_int(state.at("output"), "dfao.states[" + std::to_string(s) + "]"));
    KernelNode node;
    if (state.contains("kernel")) {
      node.level = state["kernel"].value("level", 0);
      node.offset = read_index(state["kernel"].at("offset"), "dfao.kernel");
    }
    dfao.representatives.push_back(node);
  }
  if (!doc["transitions"].is_array() ||
      doc["transitions"].size() != doc["states"].size()) {
    fail("dfao.transitions", "one row per state required");
  }
  for (std::size_t s = 0; s < doc["transitions"].size(); ++s) {
    const json& row = doc["transitions"][s];
    if (!row.is_array() || static_cast<Index>(row.size()) != dfao.k) {
      fail("dfao.transitions", "each row needs k entries");
    }
    std::vector<int> out;
    for (const auto& t : row) {
      const int target = t.get<int>();
      if (target < 0 || target >= static_cast<int>(doc["states"].size())) {
        fail("dfao.transitions", "target state out of range");
      }
      out.push_back(target);
    }
    dfao.transitions.push_back(std::move(out));
  }
  return dfao;
}

nlohmann::json representation_to_json(const LinearRepresentation& rep) {
  json doc;
  doc["k"] = rep.k;
  doc["rank"] = rep.rank;
  doc["horizon"] = rep.horizon;
  doc["basis"] = json::array();
  for (const KernelNode& node : rep.basis_nodes) {
    doc["basis"].push_back(
        {{"level", node.level}, {"offset", Int(node.offset).str()}});
  }
  doc["initial"] = json::array();
  for (Index b = 0; b < rep.rank; ++b) {
    doc["initial"].push_back(write_int(rep.initial(b)));
  }
  doc["matrices"] = json::array();
  for (const RatMatrix& m : rep.matrices) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Index j = 0; j < m.cols(); ++j) {
        row.push_back(rational_to_json(m(i, j)));
      }
      rows.push_back(std::move(row));
    }
    doc["matrices"].push_back(std::move(rows));
  }
  return doc;
}

LinearRepresentation representation_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("rank") || !doc.contains("matrices") ||
      !doc.contains("initial")) {
    fail("linrep", "expected {k, rank, matrices, initial}");
  }
  LinearRepresentation rep;
  rep.k = doc.contains("k") ? read_index(doc["k"], "linrep.k") : 2;
  if (rep.k < 2) fail("linrep.k", "must be >= 2");
  rep.rank = read_index(doc["rank"], "linrep.rank");
  if (rep.rank < 1) fail("linrep.rank", "must be >= 1");
  rep.horizon = doc.contains("horizon")
                    ? read_index(doc["horizon"], "linrep.horizon")
                    : 0;
  if (doc.contains("basis")) {
    for (const auto& b : doc["basis"]) {
      KernelNode node;
      node.level = b.value("level", 0);
      node.offset = read_index(b.at("offset"), "linrep.basis.offset");
      rep.basis_nodes.push_back(node);
    }
  }
  const json& initial = doc["initial"];
  if (!initial.is_array() || static_cast<Index>(initial.size()) != rep.rank) {
    fail("linrep.initial", "expected rank entries");
  }
  rep.initial.resize(rep.rank);
  for (Index b = 0; b < rep.rank; ++b) {
    rep.initial(b) = read_int(initial[static_cast<std::size_t>(b)],
                              "linrep.initial[" + std::to_string(b) + "]");
  }
  const json& mats = doc["matrices"];
  if (!mats.is_array() || static_cast<Index>(mats.size()) != rep.k) {
    fail("linrep.matrices", "expected k matrices");
  }
  for (Index d = 0; d < rep.k; ++d) {
    const json& jm = mats[static_cast<std::size_t>(d)];
    if (!jm.is_array() || static_cast<Index>(jm.size()) != rep.rank) {
      fail("linrep.matrices", "each matrix must be rank x rank");
    }
    RatMatrix m(rep.rank, rep.rank);
    for (Index i = 0; i < rep.rank; ++i) {
      const json& row = jm[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Index>(row.size()) != rep.rank) {
        fail("linrep.matrices", "each matrix must be rank x rank");
      }
      for (Index j = 0; j < rep.rank; ++j) {
        m(i, j) = rational_from_json(
            row[static_cast<std::size_t>(j)],
            "linrep.matrices[" + std::to_string(d) + "]");
      }
    }
    rep.matrices.push_back(std::move(m));
  }
  return rep;
}

bool VerificationReport::overall_pass() const {
  return std::all_of(items.begin(), items.end(),
                     [](const CheckItem& item) { return item.pass; });
}

nlohmann::json VerificationReport::to_json() const {
  json doc;
  doc["suite"] = suite;
  doc["parameters"] = parameters;
  doc["items"] = json::array();
  for (const CheckItem& item : items) {
    json ji;
    ji["check"] = item.id;
    ji["status"] = item.pass ? "pass" : "fail";
    if (!item.pass) ji["counterexample"] = item.counterexample;
    doc["items"].push_back(std::move(ji));
  }
  doc["tool_version"] = tool_version;
  doc["wall_time_ms"] = wall_time_ms;
  doc["status"] = overall_pass() ? "pass" : "fail";
  return doc;
}

}  // namespace seqlab
