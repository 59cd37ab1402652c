#include "seqlab/kernel.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

namespace seqlab {

KernelNode kernel_child(const KernelNode& node, Index digit, Index k) {
  if (k < 2) throw std::invalid_argument("kernel requires k >= 2");
  if (digit < 0 || digit >= k) {
    throw std::invalid_argument("kernel digit must lie in [0, k)");
  }
  Index stride = 1;
  for (int i = 0; i < node.level; ++i) stride *= k;
  return KernelNode{node.level + 1, node.offset + digit * stride};
}

namespace {

Index pow_index(Index base, int exponent) {
  Index out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

// Window of the node's subsequence readable from a length-L prefix of u:
// floor(L / k^level) values u(k^level n + offset).
IntVector node_window(const IntVector& u_prefix, const KernelNode& node,
                      Index k) {
  const Index stride = pow_index(k, node.level);
  const Index len = static_cast<Index>(u_prefix.size()) / stride;
  IntVector w(len);
  for (Index n = 0; n < len; ++n) {
    w(n) = u_prefix(stride * n + node.offset);
  }
  return w;
}

bool equal_prefix(const IntVector& a, const IntVector& b, Index len) {
  for (Index i = 0; i < len; ++i) {
    if (a(i) != b(i)) return false;
  }
  return true;
}

IntVector sequence_prefix(const Sequence& u, Index len) {
  IntVector out(len);
  for (Index n = 0; n < len; ++n) out(n) = u(n);
  return out;
}

}  // namespace

Int DFAO::evaluate(Index n) const {
  if (n < 0) throw std::invalid_argument("DFAO input must be nonnegative");
  int state = 0;
  for (Index m = n; m > 0; m /= k) {
    state = transitions[static_cast<std::size_t>(state)]
                       [static_cast<std::size_t>(m % k)];
  }
  return outputs[static_cast<std::size_t>(state)];
}

std::optional<DFAO> detect_automatic(const Sequence& u, Index k, Index horizon,
                                     int state_cap) {
  if (k < 2) throw std::invalid_argument("detect_automatic requires k >= 2");
  if (horizon < 16) throw std::invalid_argument("horizon must be >= 16");
  if (state_cap < 1) throw std::invalid_argument("state cap must be >= 1");

  const IntVector u_prefix = sequence_prefix(u, horizon);

  struct State {
    KernelNode node;
    IntVector window;
  };
  std::vector<State> states;
  states.push_back(State{KernelNode{0, 0}, u_prefix});

  std::vector<std::vector<int>> transitions;
  transitions.push_back(std::vector<int>(static_cast<std::size_t>(k), -1));

  std::deque<std::pair<int, Index>> pending;  // (state, digit), BFS order
  for (Index d = 0; d < k; ++d) pending.emplace_back(0, d);

  while (!pending.empty()) {
    auto [from, digit] = pending.front();
    pending.pop_front();
    const KernelNode node =
        kernel_child(states[static_cast<std::size_t>(from)].node, digit, k);
    const Index len = horizon / pow_index(k, node.level);
    if (len < 2) {
      throw HorizonExhausted(
          "horizon " + std::to_string(horizon) +
          " leaves fewer than 2 samples at kernel level " +
          std::to_string(node.level));
    }
    const IntVector w = node_window(u_prefix, node, k);
    int target = -1;
    for (std::size_t s = 0; s < states.size(); ++s) {
      if (equal_prefix(states[s].window, w, len)) {
        target = static_cast<int>(s);
        break;
      }
    }
    if (target < 0) {
      if (static_cast<int>(states.size()) >= state_cap) return std::nullopt;
      target = static_cast<int>(states.size());
      states.push_back(State{node, w});
      transitions.push_back(std::vector<int>(static_cast<std::size_t>(k), -1));
      for (Index d = 0; d < k; ++d) pending.emplace_back(target, d);
    }
    transitions[static_cast<std::size_t>(from)]
               [static_cast<std::size_t>(digit)] = target;
  }

  DFAO dfao;
  dfao.k = k;
  dfao.transitions = std::move(transitions);
  dfao.horizon = horizon;
  for (const auto& s : states) {
    dfao.outputs.push_back(s.window(0));
    dfao.representatives.push_back(s.node);
    TruncatedSequence t;
    t.values = s.window;
    t.origin = u.descriptor();
    dfao.windows.push_back(std::move(t));
  }

  // Full-horizon replay; truncation merges that lied get caught here.
  for (Index n = 0; n < horizon; ++n) {
    if (dfao.evaluate(n) != u_prefix(n)) {
      throw HorizonExhausted(
          "kernel truncation merged distinct states; raise the horizon "
          "(replay mismatch at n=" + std::to_string(n) + ")");
    }
  }
  return dfao;
}

namespace {

// Exact solve of A c = rhs (A is rows x cols of integers drawn from the basis
// windows); returns the coefficients with free variables pinned to zero, or
// nullopt when the system is inconsistent.
std::optional<std::vector<Rat>> solve_exact(
    const std::vector<const IntVector*>& columns, Index rows,
    const IntVector& rhs) {
  const Index cols = static_cast<Index>(columns.size());
  RatMatrix a(rows, cols + 1);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = Rat((*columns[j])(i));
    a(i, cols) = Rat(rhs(i));
  }
  std::vector<Index> pivot_col_of_row;
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index pivot = -1;
    for (Index i = row; i < rows; ++i) {
      if (!a(i, col).is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    const Rat inv = Rat(1) / a(row, col);
    for (Index j = col; j <= cols; ++j) a(row, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const Rat factor = a(i, col);
      for (Index j = col; j <= cols; ++j) a(i, j) -= factor * a(row, j);
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }
  for (Index i = row; i < rows; ++i) {
    if (!a(i, cols).is_zero()) return std::nullopt;
  }
  std::vector<Rat> solution(static_cast<std::size_t>(cols), Rat(0));
  for (Index i = 0; i < row; ++i) {
    solution[static_cast<std::size_t>(pivot_col_of_row[static_cast<std::size_t>(i)])] =
        a(i, cols);
  }
  return solution;
}

// Expresses the target window over the basis windows exactly on its full
// length, solving on a growing prefix and certifying the candidate on every
// remaining row.
std::optional<std::vector<Rat>> express_over_basis(
    const std::vector<const IntVector*>& basis, const IntVector& target,
    Index len) {
  Index probe = std::min<Index>(len, 128);
  for (;;) {
    auto coeffs = solve_exact(basis, probe, target);
    if (!coeffs) return std::nullopt;  // a prefix inconsistency is final
    if (probe == len) return coeffs;
    bool certified = true;
    for (Index row = probe; row < len && certified; ++row) {
      Rat acc(0);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        if ((*coeffs)[b].is_zero()) continue;
        acc += (*coeffs)[b] * Rat((*basis[b])(row));
      }
      if (acc != Rat(target(row))) certified = false;
    }
    if (certified) return coeffs;
    probe = std::min<Index>(len, probe * 4);
  }
}

}  // namespace

std::optional<LinearRepresentation> guess_linear_representation(
    const Sequence& u, Index k, Index horizon, int rank_cap,
    Index extended_horizon) {
  if (k < 2) throw std::invalid_argument("guess requires k >= 2");
  if (horizon < 64) throw std::invalid_argument("horizon must be >= 64");
  if (rank_cap < 1) throw std::invalid_argument("rank cap must be >= 1");
  if (extended_horizon <= horizon) {
    throw std::invalid_argument("extended horizon must exceed the horizon");
  }

  const IntVector u_prefix = sequence_prefix(u, horizon);

  struct BasisEntry {
    KernelNode node;
    IntVector window;
  };
  std::vector<BasisEntry> basis;
  basis.push_back(BasisEntry{KernelNode{0, 0}, u_prefix});

  std::deque<std::pair<int, Index>> pending;
  for (Index d = 0; d < k; ++d) pending.emplace_back(0, d);

  // Row of M_d expressing basis member `parent`'s digit-d child.
  std::map<std::pair<Index, int>, std::vector<Rat>> rows;

  while (!pending.empty()) {
    auto [parent, digit] = pending.front();
    pending.pop_front();
    const KernelNode node = kernel_child(
        basis[static_cast<std::size_t>(parent)].node, digit, k);
    const Index len = horizon / pow_index(k, node.level);
    if (len < 2) {
      throw HorizonExhausted(
          "horizon " + std::to_string(horizon) +
          " leaves fewer than 2 samples at kernel level " +
          std::to_string(node.level));
    }
    IntVector w = node_window(u_prefix, node, k);
    std::vector<const IntVector*> columns;
    columns.reserve(basis.size());
    for (const auto& b : basis) columns.push_back(&b.window);
    auto coeffs = express_over_basis(columns, w, len);
    if (coeffs) {
      rows[{digit, parent}] = std::move(*coeffs);
      continue;
    }
    if (static_cast<int>(basis.size()) >= rank_cap) return std::nullopt;
    const int fresh = static_cast<int>(basis.size());
    basis.push_back(BasisEntry{node, std::move(w)});
    std::vector<Rat> unit(static_cast<std::size_t>(fresh) + 1, Rat(0));
    unit[static_cast<std::size_t>(fresh)] = Rat(1);
    rows[{digit, parent}] = std::move(unit);
    for (Index d = 0; d < k; ++d) pending.emplace_back(fresh, d);
  }

  LinearRepresentation rep;
  rep.k = k;
  rep.rank = static_cast<Index>(basis.size());
  rep.horizon = horizon;
  rep.initial.resize(rep.rank);
  for (Index b = 0; b < rep.rank; ++b) {
    rep.basis_nodes.push_back(basis[static_cast<std::size_t>(b)].node);
    rep.initial(b) = basis[static_cast<std::size_t>(b)].window(0);
  }
  for (Index d = 0; d < k; ++d) {
    RatMatrix m = RatMatrix::Constant(rep.rank, rep.rank, Rat(0));
    for (Index t = 0; t < rep.rank; ++t) {
      const auto& row = rows.at({d, static_cast<int>(t)});
      for (std::size_t s = 0; s < row.size(); ++s) {
        m(t, static_cast<Index>(s)) = row[s];
      }
    }
    rep.matrices.push_back(std::move(m));
  }

  RepReport check = verify_representation(rep, u, extended_horizon);
  if (!check.ok()) {
    throw HorizonTooSmall(
        "kernel closure at horizon " + std::to_string(horizon) +
        " failed verification at horizon " + std::to_string(extended_horizon));
  }
  return rep;
}

Int rep_eval(const LinearRepresentation& rep, Index n) {
  if (n < 0) throw std::invalid_argument("rep_eval index must be nonnegative");
  std::vector<Index> digits;  // least significant first
  for (Index m = n; m > 0; m /= rep.k) digits.push_back(m % rep.k);
  RatVector v(rep.rank);
  for (Index b = 0; b < rep.rank; ++b) v(b) = Rat(rep.initial(b));
  for (std::size_t i = digits.size(); i-- > 0;) {
    v = rep.matrices[static_cast<std::size_t>(digits[i])] * v;
  }
  if (!v(0).is_integer()) {
    throw CorruptRepresentation("representation value at n=" +
                                std::to_string(n) + " is " +
                                v(0).numerator().str() + "/" +
                                v(0).denominator().str());
  }
  return v(0).to_integer();
}

RepReport verify_representation(const LinearRepresentation& rep,
                                const Sequence& u, Index horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  RepReport report;
  report.horizon = horizon;

  RatVector initial(rep.rank);
  for (Index b = 0; b < rep.rank; ++b) initial(b) = Rat(rep.initial(b));
  const RatVector padded = rep.matrices[0] * initial;
  for (Index b = 0; b < rep.rank; ++b) {
    if (padded(b) != initial(b)) {
      report.padding_ok = false;
      break;
    }
  }

  // State vectors by digit-peeling: S(kn + d) = M_d S(n), so S(n) only needs
  // S(floor(n / k)); this reproduces rep_eval's product exactly.
  std::vector<RatVector> states(static_cast<std::size_t>(horizon));
  states[0] = initial;
  for (Index n = 1; n < horizon; ++n) {
    states[static_cast<std::size_t>(n)] =
        rep.matrices[static_cast<std::size_t>(n % rep.k)] *
        states[static_cast<std::size_t>(n / rep.k)];
  }
  for (Index n = 0; n < horizon; ++n) {
    Int expected = u(n);
    const Rat& got = states[static_cast<std::size_t>(n)](0);
    if (got != Rat(expected)) {
      report.violations.push_back(
          RepViolation{n, std::move(expected), got});
      if (report.violations.size() >= 32) break;  // enough evidence
    }
  }
  return report;
}

GrowthProbe growth_probe(const Sequence& u, Index anchor, int steps) {
  if (anchor < 2) throw std::invalid_argument("probe anchor must be >= 2");
  if (steps < 4) throw std::invalid_argument("probe needs at least 4 steps");
  if (steps > 48) throw std::invalid_argument("probe capped at 48 steps");
  if (anchor > (std::numeric_limits<Index>::max() >> (steps + 1))) {
    throw std::invalid_argument("probe anchor too large for the step count");
  }
  const Int at_anchor = u(anchor);
  if (abs(at_anchor) < 2) {
    throw ProbeInapplicable("anchor value " + at_anchor.str() +
                            " is too small to seed the growth probe");
  }

  GrowthProbe probe;
  Index x = anchor;
  for (int kappa = 1; kappa <= steps; ++kappa) {
    x *= 2;
    const Int v = u(x);
    if (v.is_zero()) continue;
    const double ratio =
        log2_magnitude(v) / std::log2(static_cast<double>(x));
    probe.samples.push_back(GrowthSample{kappa, ratio});
  }

  const std::size_t tail = static_cast<std::size_t>(steps) / 2;
  if (probe.samples.size() >= tail + 1) {
    bool increasing = true;
    const std::size_t first = probe.samples.size() - tail;
    for (std::size_t i = first; i + 1 < probe.samples.size(); ++i) {
      if (probe.samples[i].ratio >= probe.samples[i + 1].ratio) {
        increasing = false;
        break;
      }
    }
    const double early = probe.samples[probe.samples.size() - 1 - tail].ratio;
    const double last = probe.samples.back().ratio;
    if (increasing && last > early + 1.0) {
      probe.verdict = GrowthVerdict::diverging;
    }
  }
  return probe;
}

std::optional<Periodicity> detect_periodic(const Sequence& u, Index period_cap,
                                           Index preperiod_cap, Index horizon) {
  if (period_cap < 1 || preperiod_cap < 0) {
    throw std::invalid_argument("invalid periodicity caps");
  }
  if (horizon < 2 * (period_cap + preperiod_cap)) {
    throw std::invalid_argument(
        "horizon must be at least twice period_cap + preperiod_cap");
  }
  const IntVector w = sequence_prefix(u, horizon);
  for (Index p = 1; p <= period_cap; ++p) {
    Index q = 0;
    for (Index n = horizon - p - 1; n >= 0; --n) {
      if (w(n + p) != w(n)) {
        q = n + 1;
        break;
      }
    }
    if (q <= preperiod_cap) return Periodicity{p, q};
  }
  return std::nullopt;
}

GuessReport classify(const Sequence& u, Index k, const Caps& caps) {
  GuessReport report;
  report.caps = caps;

  Index period_cap = std::min<Index>(128, caps.horizon / 8);
  Index preperiod_cap = std::min<Index>(32, caps.horizon / 8);
  if (period_cap >= 1) {
    if (auto p = detect_periodic(u, period_cap, preperiod_cap, caps.horizon)) {
      report.outcome = GuessReport::Outcome::periodic;
      report.periodicity = p;
      bool holds = true;
      for (Index n = p->preperiod; n + p->period < caps.extended_horizon; ++n) {
        if (u(n) != u(n + p->period)) {
          holds = false;
          break;
        }
      }
      report.verified_at_extended_horizon = holds;
      return report;
    }
  }

  try {
    if (auto dfao = detect_automatic(u, k, caps.horizon, caps.state_cap)) {
      report.outcome = GuessReport::Outcome::automatic;
      bool holds = true;
      for (Index n = 0; n < caps.extended_horizon; ++n) {
        if (dfao->evaluate(n) != u(n)) {
          holds = false;
          break;
        }
      }
      report.verified_at_extended_horizon = holds;
      report.dfao = std::move(dfao);
      return report;
    }
  } catch (const HorizonExhausted&) {
    // Not automatic at this horizon; fall through to the guesser.
  }

  if (auto rep = guess_linear_representation(u, k, caps.horizon, caps.rank_cap,
                                             caps.extended_horizon)) {
    report.outcome = GuessReport::Outcome::regular;
    report.representation = std::move(rep);
    report.verified_at_extended_horizon = true;  // guess verifies before returning
    return report;
  }

  report.outcome = GuessReport::Outcome::not_within_caps;
  return report;
}

}  // namespace seqlab
