#pragma once

// Empirical k-kernel machinery: automaticity detection by kernel closure,
// linear-representation guessing by exact rational solving, periodicity
// detection, and the polynomial-growth probe.
//
// Everything here is a semi-decision over a finite horizon: outputs are
// verified by full-horizon replay and carry the horizons and caps used.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seqlab/sequence.hpp"

namespace seqlab {

// Kernel node (i, j) stands for the subsequence n -> u(k^i n + j); the root
// is (0, 0) and the child under digit d is (i+1, j + d k^i).
struct KernelNode {
  int level = 0;
  Index offset = 0;

  friend bool operator==(const KernelNode& a, const KernelNode& b) {
    return a.level == b.level && a.offset == b.offset;
  }
};

KernelNode kernel_child(const KernelNode& node, Index digit, Index k);

struct Caps {
  Index horizon = Index(1) << 12;
  Index extended_horizon = Index(1) << 14;
  int rank_cap = 64;
  int state_cap = 256;
};

// Finite automaton with output reading base-k digits least significant
// first; state 0 is the initial state.
struct DFAO {
  Index k = 2;
  std::vector<std::vector<int>> transitions;  // [state][digit]
  std::vector<Int> outputs;                   // value of the state's class at 0
  std::vector<KernelNode> representatives;
  std::vector<TruncatedSequence> windows;     // deciding truncations
  Index horizon = 0;

  Index state_count() const { return static_cast<Index>(transitions.size()); }
  Int evaluate(Index n) const;
};

// Kernel closure by truncation equality. Returns the DFAO on closure within
// state_cap states, std::nullopt when the cap is exceeded, and throws
// HorizonExhausted when the horizon cannot support the BFS depth or fails
// the full-horizon replay.
std::optional<DFAO> detect_automatic(const Sequence& u, Index k, Index horizon,
                                     int state_cap);

// Rank-r witness of k-regularity: S(kn+d) = M_d S(n) for the basis-sequence
// vector S, with u = component 0 and initial = S(0).
struct LinearRepresentation {
  Index k = 2;
  Index rank = 0;
  std::vector<KernelNode> basis_nodes;  // basis_nodes[0] == (0, 0)
  std::vector<RatMatrix> matrices;      // one r x r matrix per digit
  IntVector initial;
  Index horizon = 0;
};

// BFS over kernel nodes with exact rational solving against the current
// basis. Returns std::nullopt when the rank cap is exceeded; throws
// HorizonTooSmall when closure succeeds but extended-horizon verification
// fails, and HorizonExhausted when windows become too short to solve on.
std::optional<LinearRepresentation> guess_linear_representation(
    const Sequence& u, Index k, Index horizon, int rank_cap,
    Index extended_horizon);

// Component 0 of M_{d_0} M_{d_1} ... M_{d_{l-1}} initial for the base-k
// digits of n, least significant first (empty product for n = 0). Throws
// CorruptRepresentation if the exact result is not an integer.
Int rep_eval(const LinearRepresentation& rep, Index n);

struct RepViolation {
  Index n;
  Int expected;  // sequence value
  Rat got;       // representation value (exact, possibly non-integer)
};

struct RepReport {
  std::vector<RepViolation> violations;
  bool padding_ok = true;  // M_0 initial == initial
  Index horizon = 0;

  bool ok() const { return padding_ok && violations.empty(); }
};

RepReport verify_representation(const LinearRepresentation& rep,
                                const Sequence& u, Index horizon);

enum class GrowthVerdict { diverging, bounded_at_horizon };

struct GrowthSample {
  int exponent = 0;  // kappa
  double ratio = 0;  // log2 |u(a 2^kappa)| / log2(a 2^kappa)
};

struct GrowthProbe {
  std::vector<GrowthSample> samples;
  GrowthVerdict verdict = GrowthVerdict::bounded_at_horizon;
};

// Samples u along a geometric ray from the anchor and reports whether the
// log-log growth exponent keeps climbing. Requires |u(anchor)| >= 2 (throws
// ProbeInapplicable otherwise) and steps >= 4.
GrowthProbe growth_probe(const Sequence& u, Index anchor, int steps);

struct Periodicity {
  Index period = 0;
  Index preperiod = 0;
};

// Smallest period p <= period_cap (with minimal preperiod q <= preperiod_cap
// for that p) such that u(n+p) = u(n) for all q <= n < horizon - p.
std::optional<Periodicity> detect_periodic(const Sequence& u, Index period_cap,
                                           Index preperiod_cap, Index horizon);

// Combined driver: periodicity, then automaticity, then regularity.
struct GuessReport {
  enum class Outcome { periodic, automatic, regular, not_within_caps };
  Outcome outcome = Outcome::not_within_caps;
  std::optional<Periodicity> periodicity;
  std::optional<DFAO> dfao;
  std::optional<LinearRepresentation> representation;
  Caps caps;
  bool verified_at_extended_horizon = false;
};

GuessReport classify(const Sequence& u, Index k, const Caps& caps = {});

}  // namespace seqlab
