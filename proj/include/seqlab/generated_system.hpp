#pragma once

// Polynomial-generated sequences: u(kn+i) = f_i(S^{j_i} u)(n) for n >= cutoff,
// with explicit seeds for every index the rules cannot determine.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "seqlab/sequence.hpp"

namespace seqlab {

struct GeneratedRule {
  Index residue = 0;
  SequencePolynomial poly;
  Index shift = 0;  // the rule consumes u(n + shift)
};

class GeneratedSystem {
 public:
  // rules must cover residues 0..k-1 exactly once; throws DefinitionError.
  GeneratedSystem(Index k, std::vector<GeneratedRule> rules, Index cutoff = 0,
                  std::map<Index, Int> seeds = {});

  Index k() const { return k_; }
  Index cutoff() const { return cutoff_; }
  const GeneratedRule& rule(Index residue) const {
    return rules_[static_cast<std::size_t>(residue)];
  }
  const std::vector<GeneratedRule>& rules() const { return rules_; }
  const std::map<Index, Int>& seeds() const { return seeds_; }

  void set_seed(Index index, const Int& value);

  std::string descriptor() const;

 private:
  Index k_;
  std::vector<GeneratedRule> rules_;  // indexed by residue
  Index cutoff_;
  std::map<Index, Int> seeds_;
};

// Static dependency analysis of the low indices.
struct DependencyPlan {
  // Indices the caller still has to seed: cycle members and below-cutoff
  // indices, minus supplied seeds and minus an auto-resolved index 0.
  std::set<Index> required_seeds;
  // All structurally demanded indices, before subtracting supplied seeds.
  std::set<Index> demanded_seeds;
  // Topological evaluation order of the indices <= bound.
  std::vector<Index> evaluation_order;
  std::vector<std::vector<Index>> cycle_report;
  // Beyond this index every rule application strictly decreases the index.
  Index bound = 0;
  // Value forced for index 0 by a degree-1, shift-0, cutoff-0 rule, when the
  // equation u(0) = a_0(0) u(0) + b_0(0) pins one (u(0)=0 when a_0(0)=1).
  std::optional<Int> resolved_zero;
};

// Never throws for missing seeds (that is construct's concern) but raises
// InconsistentSystem when the index-0 equation has no integer solution.
DependencyPlan resolve(const GeneratedSystem& system);

// The unique sequence satisfying the rules from cutoff on, with seeded values
// at demanded indices. Throws UnderdeterminedSystem listing the missing seeds.
Sequence construct(const GeneratedSystem& system);

struct RuleViolation {
  Index index;    // k*n + residue
  Index residue;
  Int expected;   // rule right-hand side
  Int got;        // sequence value
};

struct RuleReport {
  std::vector<RuleViolation> violations;
  Index horizon = 0;

  bool ok() const { return violations.empty(); }
};

// Checks u(kn+i) = f_i(S^{j_i} u)(n) for all cutoff <= n < horizon.
RuleReport verify_rules(const GeneratedSystem& system, const Sequence& u,
                        Index horizon);

}  // namespace seqlab
