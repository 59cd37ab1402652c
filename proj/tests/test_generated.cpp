#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "seqlab/generated_system.hpp"

using namespace seqlab;

namespace {

GeneratedSystem thue_morse_system() {
  std::vector<GeneratedRule> rules;
  rules.push_back(GeneratedRule{0, SequencePolynomial::constants({0, 1}), 0});
  rules.push_back(GeneratedRule{1, SequencePolynomial::constants({1, -1}), 0});
  return GeneratedSystem(2, std::move(rules));
}

GeneratedSystem digit_sum_system(Index k) {
  std::vector<GeneratedRule> rules;
  for (Index i = 0; i < k; ++i) {
    rules.push_back(GeneratedRule{i, SequencePolynomial::constants({i, 1}), 0});
  }
  return GeneratedSystem(k, std::move(rules));
}

// u(2n) = u(n)^2, u(2n+1) = u(n) + 1.
GeneratedSystem squaring_system() {
  std::vector<GeneratedRule> rules;
  rules.push_back(
      GeneratedRule{0, SequencePolynomial::constants({0, 0, 1}), 0});
  rules.push_back(GeneratedRule{1, SequencePolynomial::constants({1, 1}), 0});
  return GeneratedSystem(2, std::move(rules));
}

// u(2n) = n u(n), u(2n+1) = u(n) + 1.
GeneratedSystem weighted_system() {
  std::vector<GeneratedRule> rules;
  rules.push_back(GeneratedRule{
      0, SequencePolynomial({constant(0), identity()}), 0});
  rules.push_back(GeneratedRule{1, SequencePolynomial::constants({1, 1}), 0});
  return GeneratedSystem(2, std::move(rules));
}

// u(2n) = t(n) u(n) + 1, u(2n+1) = u(n) + t(n).
GeneratedSystem tm_coefficient_system() {
  std::vector<GeneratedRule> rules;
  rules.push_back(GeneratedRule{
      0, SequencePolynomial({constant(1), thue_morse()}), 0});
  rules.push_back(GeneratedRule{
      1, SequencePolynomial({thue_morse(), constant(1)}), 0});
  return GeneratedSystem(2, std::move(rules));
}

}  // namespace

TEST_CASE("system validation") {
  std::vector<GeneratedRule> missing;
  missing.push_back(GeneratedRule{0, SequencePolynomial::constants({0, 1}), 0});
  CHECK_THROWS_AS(GeneratedSystem(2, missing), DefinitionError);

  std::vector<GeneratedRule> duplicate;
  duplicate.push_back(
      GeneratedRule{0, SequencePolynomial::constants({0, 1}), 0});
  duplicate.push_back(
      GeneratedRule{0, SequencePolynomial::constants({1, 1}), 0});
  CHECK_THROWS_AS(GeneratedSystem(2, duplicate), DefinitionError);

  std::vector<GeneratedRule> single;
  single.push_back(GeneratedRule{0, SequencePolynomial::constants({0, 1}), 0});
  CHECK_THROWS_AS(GeneratedSystem(1, single), DefinitionError);
}

TEST_CASE("resolve applies the unshifted degree-1 default at index 0") {
  const DependencyPlan plan = resolve(thue_morse_system());
  CHECK(plan.required_seeds.empty());
  REQUIRE(plan.resolved_zero.has_value());
  CHECK(*plan.resolved_zero == 0);

  bool saw_zero_loop = false;
  for (const auto& cycle : plan.cycle_report) {
    if (cycle.size() == 1 && cycle[0] == 0) saw_zero_loop = true;
  }
  CHECK(saw_zero_loop);

  const DependencyPlan ds = resolve(digit_sum_system(2));
  CHECK(ds.required_seeds.empty());
  REQUIRE(ds.resolved_zero.has_value());
  CHECK(*ds.resolved_zero == 0);
}

TEST_CASE("resolve solves a determined index-0 equation") {
  // u(2n) = t(n) u(n) + 1 forces u(0) = 1/(1 - t(0)) = 1.
  const DependencyPlan plan = resolve(tm_coefficient_system());
  CHECK(plan.required_seeds.empty());
  REQUIRE(plan.resolved_zero.has_value());
  CHECK(*plan.resolved_zero == 1);
}

TEST_CASE("inconsistent index-0 equations are rejected") {
  // u(0) = u(0) + 1 has no solution.
  std::vector<GeneratedRule> rules;
  rules.push_back(GeneratedRule{0, SequencePolynomial::constants({1, 1}), 0});
  rules.push_back(GeneratedRule{1, SequencePolynomial::constants({0, 1}), 0});
  CHECK_THROWS_AS(resolve(GeneratedSystem(2, rules)), InconsistentSystem);

  // u(0) = 3 u(0) + 1 forces the non-integer -1/2.
  std::vector<GeneratedRule> frac;
  frac.push_back(GeneratedRule{0, SequencePolynomial::constants({1, 3}), 0});
  frac.push_back(GeneratedRule{1, SequencePolynomial::constants({0, 1}), 0});
  CHECK_THROWS_AS(resolve(GeneratedSystem(2, frac)), InconsistentSystem);

  // An explicit seed overrides; the conflict then shows up in verify_rules.
  GeneratedSystem seeded(2, rules, 0, {{0, Int(5)}});
  const DependencyPlan plan = resolve(seeded);
  CHECK(plan.required_seeds.empty());
  const Sequence u = construct(seeded);
  CHECK(u(0) == 5);
  CHECK_FALSE(verify_rules(seeded, u, 4).ok());
}

TEST_CASE("thue-morse construction") {
  const Sequence u = construct(thue_morse_system());
  const std::vector<Int> expected = {0, 1, 1, 0, 1, 0, 0, 1};
  for (Index n = 0; n < 8; ++n) {
    REQUIRE(u(n) == expected[static_cast<std::size_t>(n)]);
  }
  for (Index n = 0; n < 4096; ++n) {
    CAPTURE(n);
    REQUIRE(u(n) == testing::thue_morse_recursive(n));
  }
  CHECK(verify_rules(thue_morse_system(), u, 4096).ok());
}

TEST_CASE("digit-sum constructions match the direct definition") {
  for (Index k : {Index(2), Index(3), Index(10)}) {
    const Sequence u = construct(digit_sum_system(k));
    for (Index n = 0; n < 4096; ++n) {
      CAPTURE(k);
      CAPTURE(n);
      REQUIRE(u(n) == testing::digit_sum_legendre(n, k));
    }
  }
}

TEST_CASE("squaring system needs a seed and reproduces the fixture") {
  CHECK_THROWS_AS(construct(squaring_system()), UnderdeterminedSystem);

  GeneratedSystem sys = squaring_system();
  sys.set_seed(0, 0);
  const Sequence u = construct(sys);
  CHECK(u(3) == 2);
  CHECK(verify_rules(sys, u, 256).ok());

  GeneratedSystem alt = squaring_system();
  alt.set_seed(0, 1);
  const Sequence v = construct(alt);
  CHECK(v(1) == 2);  // the anchor value the divergence argument needs
  CHECK(v(2) == 4);
  CHECK(verify_rules(alt, v, 64).ok());
}

TEST_CASE("weighted system unrolls as expected") {
  const Sequence u = construct(weighted_system());
  CHECK(u(3) == 2);
  CHECK(u(6) == 6);
  CHECK(u(12) == 36);
  CHECK(verify_rules(weighted_system(), u, 512).ok());
}

TEST_CASE("thue-morse coefficient system satisfies its identities") {
  const GeneratedSystem sys = tm_coefficient_system();
  const Sequence u = construct(sys);
  CHECK(u(0) == 1);
  CHECK(u(1) == 1);
  const Index horizon = Index(1) << 10;
  for (Index n = 0; n < horizon; ++n) {
    CAPTURE(n);
    REQUIRE(u(4 * n + 3) == u(n) + 1);
    REQUIRE(u(4 * n + 2) == -u(2 * n) + u(n) + 2);
    REQUIRE(u(4 * n) == u(2 * n) + u(2 * n + 1) - u(n));
    REQUIRE(u(4 * n + 1) == u(4 * n));
  }
  CHECK(verify_rules(sys, u, horizon).ok());
}

TEST_CASE("construction is deterministic") {
  const Sequence a = construct(tm_coefficient_system());
  const Sequence b = construct(tm_coefficient_system());
  for (Index n = 0; n < 1024; ++n) REQUIRE(a(n) == b(n));
}

TEST_CASE("cutoff defers the rules and demands the low seeds") {
  // Digit-sum rules from n >= 3 on, garbage below.
  std::vector<GeneratedRule> rules;
  rules.push_back(GeneratedRule{0, SequencePolynomial::constants({0, 1}), 0});
  rules.push_back(GeneratedRule{1, SequencePolynomial::constants({1, 1}), 0});
  std::map<Index, Int> seeds;
  for (Index i = 0; i < 6; ++i) seeds[i] = 90 + i;
  const GeneratedSystem sys(2, rules, 3, seeds);

  const DependencyPlan plan = resolve(sys);
  for (Index i = 0; i < 6; ++i) CHECK(plan.demanded_seeds.count(i) == 1);
  CHECK(plan.required_seeds.empty());

  const Sequence u = construct(sys);
  CHECK(u(4) == 94);
  CHECK(u(7) == u(3) + 1);
  CHECK(verify_rules(sys, u, 64).ok());

  // Missing below-cutoff seeds are reported.
  const GeneratedSystem missing(2, rules, 3, {{0, Int(0)}});
  CHECK_THROWS_AS(construct(missing), UnderdeterminedSystem);
}

TEST_CASE("rule verification flags a wrong sequence") {
  const RuleReport report =
      verify_rules(thue_morse_system(), chi_pow2(), 16);
  REQUIRE_FALSE(report.ok());
  // The first violated rule sits at an odd index: p(2n) = p(n) holds.
  CHECK(report.violations.front().index == 7);
  CHECK(report.violations.front().index % 2 == 1);
  CHECK(report.violations.front().expected == 1);
  CHECK(report.violations.front().got == 0);
}

TEST_CASE("shifted rules participate in dependency analysis") {
  // u(2n) = u(n), u(2n+1) = u(n + 2).
  std::vector<GeneratedRule> rules;
  rules.push_back(GeneratedRule{0, SequencePolynomial::constants({0, 1}), 0});
  rules.push_back(GeneratedRule{1, SequencePolynomial::constants({0, 1}), 2});
  const GeneratedSystem sys(2, rules);
  const DependencyPlan plan = resolve(sys);
  // 1 = 2*0+1 consumes u(0+2) = u(2), 2 = 2*1+0 consumes u(1): cycle {1, 2};
  // 3 = 2*1+1 consumes u(1+2) = u(3): a self-loop.
  bool pair_cycle = false;
  bool self_loop3 = false;
  for (const auto& cycle : plan.cycle_report) {
    std::set<Index> members(cycle.begin(), cycle.end());
    if (members == std::set<Index>{1, 2}) pair_cycle = true;
    if (members == std::set<Index>{3}) self_loop3 = true;
  }
  CHECK(pair_cycle);
  CHECK(self_loop3);
  CHECK(plan.required_seeds == std::set<Index>{1, 2, 3});

  GeneratedSystem seeded(2, rules, 0,
                         {{1, Int(7)}, {2, Int(7)}, {3, Int(9)}});
  const Sequence u = construct(seeded);
  CHECK(u(3) == 9);
  CHECK(u(5) == 7);  // u(5) = u(2+2) = u(4) = u(2) = 7
  CHECK(u(7) == 7);  // u(7) = u(3+2) = u(5) = 7
  CHECK(verify_rules(seeded, u, 128).ok());
}
