#pragma once

// Named verification suites, one per claim the library reproduces. The CLI's
// `verify --suite <name>` and the acceptance harness both run these.

#include <string>
#include <vector>

#include "seqlab/io.hpp"

namespace seqlab {

struct SuiteParams {
  // Negative fields pick the suite's documented default.
  Index max_m = -1;
  Index max_n = -1;
  Index max_k = -1;
  Index horizon = -1;
  Index extended_horizon = -1;
  int rank_cap = 64;
  int state_cap = 256;
};

// Suites reachable from the CLI.
const std::vector<std::string>& suite_names();

// All suites, including the fixture groups the acceptance harness adds
// (polygen-fixtures, growth-probes, conjugation). Unknown names throw
// std::invalid_argument.
VerificationReport run_suite(const std::string& name,
                             const SuiteParams& params = {});

}  // namespace seqlab
