// seqlab command-line interface.
//
// Exit codes: 0 success, 1 verification failure (a check failed or no
// witness was found within the caps), 2 usage error (bad flags, malformed
// documents, inapplicable preconditions).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "seqlab/hankel.hpp"
#include "seqlab/io.hpp"
#include "seqlab/suites.hpp"

namespace {

using namespace seqlab;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageFailure("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageFailure("cannot write file: " + path);
  out << text << '\n';
}

struct DefinitionOptions {
  std::string path;
  std::vector<std::string> seed_overrides;

  GeneratedSystem load() const {
    SequenceDefinition def = parse_document(read_file(path));
    GeneratedSystem system = def.realize();
    for (const std::string& text : seed_overrides) {
      const auto eq = text.find('=');
      if (eq == std::string::npos) {
        throw UsageFailure("--seed expects index=value, got '" + text + "'");
      }
      Index index = 0;
      try {
        index = Int::from_decimal(text.substr(0, eq)).to_int64();
      } catch (const std::exception&) {
        throw UsageFailure("bad seed index in '" + text + "'");
      }
      system.set_seed(index, Int::from_decimal(text.substr(eq + 1)));
    }
    return system;
  }
};

void add_definition_options(CLI::App* cmd, DefinitionOptions& opts) {
  cmd->add_option("--def", opts.path, "sequence definition document")
      ->required();
  cmd->add_option("--seed", opts.seed_overrides,
                  "seed override index=value (repeatable)");
}

void print_report(const VerificationReport& report) {
  for (const CheckItem& item : report.items) {
    std::cout << (item.pass ? "[PASS] " : "[FAIL] ") << item.id;
    if (!item.pass && !item.counterexample.empty()) {
      std::cout << "  (" << item.counterexample << ")";
    }
    std::cout << '\n';
  }
  std::cout << (report.overall_pass() ? "suite passed" : "suite FAILED")
            << " in " << static_cast<long long>(report.wall_time_ms) << " ms"
            << '\n';
}

int emit_report(const VerificationReport& report, const std::string& out) {
  if (!out.empty()) write_file(out, report.to_json().dump(2));
  print_report(report);
  return report.overall_pass() ? kExitOk : kExitVerificationFailure;
}

int run(int argc, char** argv) {
  CLI::App app{"exact integer sequences, kernel detection and Hankel "
               "determinants of the powers-of-two indicator"};
  app.require_subcommand(1);

  // seq ----------------------------------------------------------------
  auto* seq = app.add_subcommand("seq", "evaluate defined sequences");
  seq->require_subcommand(1);

  DefinitionOptions seq_eval_def;
  Index seq_eval_n = 0;
  auto* seq_eval = seq->add_subcommand("eval", "value at one index");
  add_definition_options(seq_eval, seq_eval_def);
  seq_eval->add_option("--n", seq_eval_n, "index")->required();

  DefinitionOptions seq_prefix_def;
  Index seq_prefix_len = 16;
  std::string seq_prefix_out;
  auto* seq_prefix = seq->add_subcommand("prefix", "leading window");
  add_definition_options(seq_prefix, seq_prefix_def);
  seq_prefix->add_option("--horizon", seq_prefix_len, "window length");
  seq_prefix->add_option("--out", seq_prefix_out, "write JSON window");

  // polygen ------------------------------------------------------------
  auto* polygen = app.add_subcommand("polygen", "generated systems");
  polygen->require_subcommand(1);

  DefinitionOptions pg_construct_def;
  Index pg_construct_len = 16;
  std::string pg_construct_out;
  auto* pg_construct =
      polygen->add_subcommand("construct", "construct and print a prefix");
  add_definition_options(pg_construct, pg_construct_def);
  pg_construct->add_option("--horizon", pg_construct_len, "prefix length");
  pg_construct->add_option("--out", pg_construct_out, "write JSON window");

  DefinitionOptions pg_verify_def;
  Index pg_verify_len = 1024;
  std::string pg_verify_out;
  auto* pg_verify = polygen->add_subcommand(
      "verify", "check the rules against the constructed sequence");
  add_definition_options(pg_verify, pg_verify_def);
  pg_verify->add_option("--horizon", pg_verify_len, "verification horizon");
  pg_verify->add_option("--out", pg_verify_out, "write JSON report");

  // kernel ---------------------------------------------------------------
  auto* kernel = app.add_subcommand("kernel", "k-kernel machinery");
  kernel->require_subcommand(1);

  DefinitionOptions kd_def;
  Index kd_k = 2;
  Index kd_horizon = Index(1) << 12;
  int kd_state_cap = 256;
  std::string kd_out;
  auto* kd = kernel->add_subcommand("detect", "automaticity by kernel closure");
  add_definition_options(kd, kd_def);
  kd->add_option("--k", kd_k, "base");
  kd->add_option("--horizon", kd_horizon, "detection horizon");
  kd->add_option("--state-cap", kd_state_cap, "maximum states");
  kd->add_option("--out", kd_out, "write the DFAO document");

  DefinitionOptions kg_def;
  Index kg_k = 2;
  Index kg_horizon = Index(1) << 12;
  Index kg_extended = Index(1) << 14;
  int kg_rank_cap = 64;
  std::string kg_out;
  auto* kg = kernel->add_subcommand("guess", "linear-representation guessing");
  add_definition_options(kg, kg_def);
  kg->add_option("--k", kg_k, "base");
  kg->add_option("--horizon", kg_horizon, "construction horizon");
  kg->add_option("--extended-horizon", kg_extended, "verification horizon");
  kg->add_option("--rank-cap", kg_rank_cap, "maximum rank");
  kg->add_option("--out", kg_out, "write the representation document");

  DefinitionOptions kp_def;
  Index kp_anchor = 3;
  Index kp_steps = 10;
  auto* kp = kernel->add_subcommand("probe", "polynomial-growth probe");
  add_definition_options(kp, kp_def);
  kp->add_option("--n", kp_anchor, "probe anchor a (samples u(a 2^kappa))");
  kp->add_option("--max-k", kp_steps, "number of doubling steps");

  DefinitionOptions kper_def;
  Index kper_period_cap = 64;
  Index kper_preperiod_cap = 16;
  Index kper_horizon = Index(1) << 12;
  auto* kper = kernel->add_subcommand("periodic", "eventual-period detection");
  add_definition_options(kper, kper_def);
  kper->add_option("--max-n", kper_period_cap, "period cap");
  kper->add_option("--max-m", kper_preperiod_cap, "preperiod cap");
  kper->add_option("--horizon", kper_horizon, "verification horizon");

  // hankel ---------------------------------------------------------------
  auto* hankel = app.add_subcommand(
      "hankel", "determinants of the powers-of-two indicator");
  hankel->require_subcommand(1);

  Index hd_m = 0;
  Index hd_n = 1;
  std::string hd_method = "both";
  auto* hd = hankel->add_subcommand("det", "one determinant value");
  hd->add_option("--m", hd_m, "window offset")->required();
  hd->add_option("--n", hd_n, "matrix order")->required();
  hd->add_option("--method", hd_method, "oracle | recurrence | both")
      ->check(CLI::IsMember({"oracle", "recurrence", "both"}));

  Index hg_max_m = 64;
  Index hg_max_n = 128;
  std::string hg_method = "both";
  std::string hg_out;
  auto* hg = hankel->add_subcommand("grid", "cross-check a grid of values");
  hg->add_option("--max-m", hg_max_m, "largest offset");
  hg->add_option("--max-n", hg_max_n, "largest order");
  hg->add_option("--method", hg_method, "oracle | recurrence | both")
      ->check(CLI::IsMember({"oracle", "recurrence", "both"}));
  hg->add_option("--out", hg_out, "write JSON results");

  // verify ---------------------------------------------------------------
  std::string v_suite;
  SuiteParams v_params;
  std::string v_out;
  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("--suite", v_suite, "suite name")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--max-m", v_params.max_m, "offset bound");
  verify->add_option("--max-n", v_params.max_n, "order/index bound");
  verify->add_option("--max-k", v_params.max_k, "dyadic-level bound");
  verify->add_option("--horizon", v_params.horizon, "horizon");
  verify->add_option("--extended-horizon", v_params.extended_horizon,
                     "extended verification horizon");
  verify->add_option("--rank-cap", v_params.rank_cap, "rank cap");
  verify->add_option("--state-cap", v_params.state_cap, "state cap");
  verify->add_option("--out", v_out, "write JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (seq_eval->parsed()) {
    const Sequence u = construct(seq_eval_def.load());
    if (seq_eval_n < 0) throw UsageFailure("--n must be nonnegative");
    std::cout << u(seq_eval_n) << '\n';
    return kExitOk;
  }

  if (seq_prefix->parsed() || pg_construct->parsed()) {
    const bool is_prefix = seq_prefix->parsed();
    const auto& def = is_prefix ? seq_prefix_def : pg_construct_def;
    const Index len = is_prefix ? seq_prefix_len : pg_construct_len;
    const std::string& out = is_prefix ? seq_prefix_out : pg_construct_out;
    if (len < 1) throw UsageFailure("--horizon must be >= 1");
    const TruncatedSequence window = prefix(construct(def.load()), len);
    for (Index n = 0; n < window.length(); ++n) {
      if (n) std::cout << ' ';
      std::cout << window.values(n);
    }
    std::cout << '\n';
    if (!out.empty()) {
      nlohmann::json doc;
      doc["origin"] = window.origin;
      doc["values"] = nlohmann::json::array();
      for (Index n = 0; n < window.length(); ++n) {
        doc["values"].push_back(window.values(n).str());
      }
      write_file(out, doc.dump(2));
    }
    return kExitOk;
  }

  if (pg_verify->parsed()) {
    const GeneratedSystem system = pg_verify_def.load();
    const RuleReport rules = verify_rules(system, construct(system),
                                          pg_verify_len);
    VerificationReport report;
    report.suite = "polygen-verify";
    report.parameters = {{"horizon", pg_verify_len}};
    for (std::size_t i = 0; i < rules.violations.size() && i < 16; ++i) {
      const RuleViolation& v = rules.violations[i];
      report.items.push_back(
          CheckItem{"rule at index " + std::to_string(v.index), false,
                    "expected " + v.expected.str() + ", got " + v.got.str()});
    }
    if (rules.ok()) {
      report.items.push_back(CheckItem{
          "all rules hold on the horizon", true, ""});
    }
    return emit_report(report, pg_verify_out);
  }

  if (kd->parsed()) {
    const Sequence u = construct(kd_def.load());
    const auto dfao = detect_automatic(u, kd_k, kd_horizon, kd_state_cap);
    if (!dfao) {
      std::cout << "not automatic within state cap " << kd_state_cap << '\n';
      return kExitVerificationFailure;
    }
    std::cout << "automatic: " << dfao->state_count() << " states at horizon "
              << dfao->horizon << '\n';
    if (!kd_out.empty()) write_file(kd_out, dfao_to_json(*dfao).dump(2));
    return kExitOk;
  }

  if (kg->parsed()) {
    const Sequence u = construct(kg_def.load());
    const auto rep = guess_linear_representation(u, kg_k, kg_horizon,
                                                 kg_rank_cap, kg_extended);
    if (!rep) {
      std::cout << "no representation within rank cap " << kg_rank_cap << '\n';
      return kExitVerificationFailure;
    }
    std::cout << "regular: rank " << rep->rank << " verified to horizon "
              << kg_extended << '\n';
    if (!kg_out.empty()) {
      write_file(kg_out, representation_to_json(*rep).dump(2));
    }
    return kExitOk;
  }

  if (kp->parsed()) {
    const Sequence u = construct(kp_def.load());
    const GrowthProbe probe =
        growth_probe(u, kp_anchor, static_cast<int>(kp_steps));
    for (const GrowthSample& s : probe.samples) {
      std::cout << "kappa=" << s.exponent << " rho=" << s.ratio << '\n';
    }
    std::cout << "verdict="
              << (probe.verdict == GrowthVerdict::diverging
                      ? "diverging"
                      : "bounded-at-horizon")
              << '\n';
    return kExitOk;
  }

  if (kper->parsed()) {
    const Sequence u = construct(kper_def.load());
    const auto found = detect_periodic(u, kper_period_cap, kper_preperiod_cap,
                                       kper_horizon);
    if (!found) {
      std::cout << "no period within caps" << '\n';
      return kExitVerificationFailure;
    }
    std::cout << "period=" << found->period << " preperiod=" << found->preperiod
              << '\n';
    return kExitOk;
  }

  if (hd->parsed()) {
    if (hd_m < 0 || hd_n < 0) throw UsageFailure("--m and --n must be >= 0");
    std::optional<Int> oracle;
    std::optional<Int> rec;
    if (hd_method != "recurrence") oracle = det_oracle(hd_m, hd_n).value;
    if (hd_method != "oracle") rec = det_recurrence(hd_m, hd_n).value;
    if (oracle) std::cout << "oracle=" << *oracle;
    if (oracle && rec) std::cout << ' ';
    if (rec) std::cout << "recurrence=" << *rec;
    if (oracle && rec) {
      const bool agree = *oracle == *rec;
      std::cout << " agree=" << (agree ? "true" : "false") << '\n';
      return agree ? kExitOk : kExitVerificationFailure;
    }
    std::cout << '\n';
    return kExitOk;
  }

  if (hg->parsed()) {
    if (hg_method == "both") {
      SuiteParams params;
      params.max_m = hg_max_m;
      params.max_n = hg_max_n;
      return emit_report(run_suite("oracle-grid", params), hg_out);
    }
    nlohmann::json rows = nlohmann::json::array();
    for (Index m = 0; m <= hg_max_m; ++m) {
      nlohmann::json row = nlohmann::json::array();
      for (Index n = 0; n <= hg_max_n; ++n) {
        const Int v = hg_method == "oracle" ? det_oracle(m, n).value
                                            : det_recurrence(m, n).value;
        row.push_back(v.str());
      }
      rows.push_back(std::move(row));
    }
    nlohmann::json doc;
    doc["method"] = hg_method;
    doc["max_m"] = hg_max_m;
    doc["max_n"] = hg_max_n;
    doc["values"] = std::move(rows);
    if (!hg_out.empty()) {
      write_file(hg_out, doc.dump(2));
    } else {
      std::cout << doc.dump(2) << '\n';
    }
    return kExitOk;
  }

  if (verify->parsed()) {
    return emit_report(run_suite(v_suite, v_params), v_out);
  }

  std::cerr << "usage error: no subcommand" << '\n';
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageFailure& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DefinitionError& e) {
    std::cerr << "definition error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnderdeterminedSystem& e) {
    std::cerr << "definition error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InconsistentSystem& e) {
    std::cerr << "definition error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ProbeInapplicable& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const HorizonExhausted& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kExitVerificationFailure;
  } catch (const HorizonTooSmall& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kExitVerificationFailure;
  } catch (const CorruptRepresentation& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kExitVerificationFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
