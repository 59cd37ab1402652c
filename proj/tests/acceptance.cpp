// Acceptance harness: one line per criterion, exit code = number of failures.
//
// Every tolerance here is exact equality; horizons and caps are pinned in the
// suite defaults (src/suites.cpp) and in the parameters below.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "seqlab/suites.hpp"

namespace {

using namespace seqlab;

int failures = 0;

void criterion(int number, const std::string& title,
               const std::vector<VerificationReport>& reports) {
  bool pass = true;
  std::string detail;
  double ms = 0;
  for (const VerificationReport& report : reports) {
    ms += report.wall_time_ms;
    for (const CheckItem& item : report.items) {
      if (!item.pass) {
        pass = false;
        if (detail.empty()) {
          detail = report.suite + " / " + item.id;
          if (!item.counterexample.empty()) {
            detail += ": " + item.counterexample;
          }
        }
      }
    }
  }
  if (!pass) ++failures;
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": "
            << title << " (" << static_cast<long long>(ms) << " ms)";
  if (!pass) std::cout << "  -- " << detail;
  std::cout << std::endl;
}

}  // namespace

int main() {
  {
    SuiteParams p;
    p.max_m = 64;
    p.max_n = 128;
    criterion(1, "oracle-recurrence equivalence for m <= 64, n <= 128",
              {run_suite("oracle-grid", p)});
  }
  {
    SuiteParams p;
    p.horizon = Index(1) << 16;
    p.max_m = Index(1) << 10;
    p.max_n = Index(1) << 10;
    criterion(2, "closed form of the m=1 row and unit values",
              {run_suite("prop42", p)});
  }
  {
    SuiteParams morphism;
    morphism.horizon = Index(1) << 14;
    SuiteParams recursion;
    recursion.horizon = Index(1) << 14;
    criterion(3, "morphism word prefix of length 2^14 and printed letters",
              {run_suite("morphism", morphism),
               run_suite("prop43", recursion)});
  }
  {
    SuiteParams p;
    p.max_m = 128;
    p.max_n = Index(1) << 12;
    criterion(4, "support pattern for 3 <= m <= 128, n <= 2^12",
              {run_suite("prop44", p)});
  }
  {
    SuiteParams p;
    p.max_m = 64;
    p.max_n = Index(1) << 12;
    criterion(5, "checkpoint identities for 3 <= m <= 64, indices <= 2^12",
              {run_suite("cigler", p)});
  }
  {
    SuiteParams p;
    p.horizon = Index(1) << 12;
    p.extended_horizon = Index(1) << 14;
    p.rank_cap = 64;
    p.state_cap = 256;
    SuiteParams periodic;
    periodic.max_m = 64;
    periodic.horizon = Index(1) << 12;
    criterion(6,
              "regularity of the m=0 row, automaticity of even rows, "
              "periodicity of odd rows",
              {run_suite("regularity", p), run_suite("periodicity", periodic)});
  }
  {
    SuiteParams p;
    p.horizon = Index(1) << 16;          // thue-morse prefix
    p.max_n = Index(1) << 14;            // digit-sum horizon
    p.extended_horizon = Index(1) << 12; // identity horizon
    criterion(7, "generated-system fixtures match their direct definitions",
              {run_suite("polygen-fixtures", p)});
  }
  criterion(8, "growth probes separate the non-regular fixtures",
            {run_suite("growth-probes", {})});
  {
    SuiteParams p;
    p.max_n = 200;  // rounds
    criterion(9, "determinant invariance under interleave conjugation",
              {run_suite("conjugation", p)});
  }

  if (failures == 0) {
    std::cout << "all acceptance criteria passed" << std::endl;
  } else {
    std::cout << failures << " acceptance criteria FAILED" << std::endl;
  }
  return failures;
}
