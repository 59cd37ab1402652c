#include "seqlab/generated_system.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace seqlab {

GeneratedSystem::GeneratedSystem(Index k, std::vector<GeneratedRule> rules,
                                 Index cutoff, std::map<Index, Int> seeds)
    : k_(k), cutoff_(cutoff), seeds_(std::move(seeds)) {
  if (k < 2) throw DefinitionError("generated system requires k >= 2");
  if (cutoff < 0) throw DefinitionError("cutoff must be nonnegative");
  rules_.reserve(static_cast<std::size_t>(k));
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  std::vector<GeneratedRule> by_residue;
  by_residue.reserve(rules.size());
  for (auto& rule : rules) {
    if (rule.residue < 0 || rule.residue >= k) {
      throw DefinitionError("rule residue " + std::to_string(rule.residue) +
                            " outside [0," + std::to_string(k) + ")");
    }
    if (rule.shift < 0) throw DefinitionError("rule shift must be nonnegative");
    if (seen[static_cast<std::size_t>(rule.residue)]) {
      throw DefinitionError("duplicate rule for residue " +
                            std::to_string(rule.residue));
    }
    seen[static_cast<std::size_t>(rule.residue)] = true;
  }
  for (Index r = 0; r < k; ++r) {
    if (!seen[static_cast<std::size_t>(r)]) {
      throw DefinitionError("missing rule for residue " + std::to_string(r));
    }
  }
  rules_.resize(static_cast<std::size_t>(k),
                GeneratedRule{0, SequencePolynomial::constants({Int(0)}), 0});
  for (auto& rule : rules) {
    rules_[static_cast<std::size_t>(rule.residue)] = std::move(rule);
  }
}

void GeneratedSystem::set_seed(Index index, const Int& value) {
  if (index < 0) throw DefinitionError("seed index must be nonnegative");
  seeds_[index] = value;
}

std::string GeneratedSystem::descriptor() const {
  std::ostringstream os;
  os << "G(k=" << k_ << ";N=" << cutoff_;
  for (const auto& rule : rules_) {
    os << ";f" << rule.residue << "=" << rule.poly.descriptor() << "@S"
       << rule.shift;
  }
  os << ";seeds={";
  bool first = true;
  for (const auto& [index, value] : seeds_) {
    if (!first) os << ',';
    first = false;
    os << index << ':' << value;
  }
  os << "})";
  return os.str();
}

namespace {

// Smallest n from which rule i strictly decreases: n + j_i < k*n + i.
Index decrease_threshold(Index k, Index residue, Index shift) {
  const Index gap = shift - residue;
  if (gap < 0) return 0;
  return gap / (k - 1) + 1;
}

struct Graph {
  Index bound;
  // parent[m] = index consumed to produce m, or -1 below cutoff.
  std::vector<Index> parent;
};

Graph build_graph(const GeneratedSystem& sys) {
  const Index k = sys.k();
  Index bound = k * sys.cutoff() + k;
  for (const auto& rule : sys.rules()) {
    const Index t = std::max(decrease_threshold(k, rule.residue, rule.shift),
                             sys.cutoff());
    bound = std::max(bound, k * t + k);
  }
  Graph g;
  g.bound = bound;
  g.parent.assign(static_cast<std::size_t>(bound) + 1, -1);
  for (Index m = 0; m <= bound; ++m) {
    const Index n = m / k;
    if (n < sys.cutoff()) continue;  // below cutoff: no defining rule
    const auto& rule = sys.rule(m % k);
    const Index p = n + rule.shift;
    assert(p <= bound);
    g.parent[static_cast<std::size_t>(m)] = p;
  }
  return g;
}

}  // namespace

DependencyPlan resolve(const GeneratedSystem& sys) {
  const Graph g = build_graph(sys);
  DependencyPlan plan;
  plan.bound = g.bound;

  // Cycle detection in the functional dependency graph.
  enum : unsigned char { white, gray, black };
  std::vector<unsigned char> color(g.parent.size(), white);
  std::vector<Index> stack;
  for (Index start = 0; start <= g.bound; ++start) {
    if (color[static_cast<std::size_t>(start)] != white) continue;
    stack.clear();
    Index m = start;
    while (m >= 0 && color[static_cast<std::size_t>(m)] == white) {
      color[static_cast<std::size_t>(m)] = gray;
      stack.push_back(m);
      m = g.parent[static_cast<std::size_t>(m)];
    }
    if (m >= 0 && color[static_cast<std::size_t>(m)] == gray) {
      // Found a new cycle: the tail of the stack starting at m.
      auto it = std::find(stack.begin(), stack.end(), m);
      plan.cycle_report.emplace_back(it, stack.end());
    }
    for (Index s : stack) color[static_cast<std::size_t>(s)] = black;
  }

  for (const auto& cycle : plan.cycle_report) {
    for (Index m : cycle) plan.demanded_seeds.insert(m);
  }
  for (Index m = 0; m < sys.k() * sys.cutoff(); ++m) {
    plan.demanded_seeds.insert(m);
  }

  // The index-0 self-loop equation u(0) = a_0(0) u(0) + b_0(0) resolves
  // itself for degree-1 unshifted rules (u(0) = 0 when a_0(0) = 1).
  const bool zero_seeded = sys.seeds().count(0) > 0;
  if (plan.demanded_seeds.count(0) && sys.cutoff() == 0) {
    const auto& rule = sys.rule(0);
    if (rule.shift == 0 && rule.poly.degree() == 1) {
      const Int a00 = rule.poly.coefficient(1)(0);
      const Int b00 = rule.poly.coefficient(0)(0);
      if (a00 == 1) {
        if (b00.is_zero()) {
          plan.resolved_zero = Int(0);
        } else if (!zero_seeded) {
          throw InconsistentSystem(
              "u(0) = u(0) + " + b00.str() + " has no solution");
        }
      } else {
        const Int den = Int(1) - a00;
        if ((b00 % den).is_zero()) {
          plan.resolved_zero = b00 / den;
        } else if (!zero_seeded) {
          throw InconsistentSystem("u(0) = " + b00.str() + "/(1-" + a00.str() +
                                   ") is not an integer");
        }
      }
    }
  }

  for (Index m : plan.demanded_seeds) {
    if (sys.seeds().count(m)) continue;
    if (m == 0 && plan.resolved_zero) continue;
    plan.required_seeds.insert(m);
  }

  // Topological order: demanded indices and rule-free indices are sources;
  // every other index follows its parent.
  std::vector<std::vector<Index>> children(g.parent.size());
  std::vector<bool> source(g.parent.size(), false);
  for (Index m = 0; m <= g.bound; ++m) {
    if (g.parent[static_cast<std::size_t>(m)] < 0 ||
        plan.demanded_seeds.count(m)) {
      source[static_cast<std::size_t>(m)] = true;
    } else {
      children[static_cast<std::size_t>(g.parent[static_cast<std::size_t>(m)])]
          .push_back(m);
    }
  }
  std::vector<Index> queue;
  for (Index m = 0; m <= g.bound; ++m) {
    if (source[static_cast<std::size_t>(m)]) queue.push_back(m);
  }
  plan.evaluation_order.reserve(g.parent.size());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Index m = queue[head];
    plan.evaluation_order.push_back(m);
    for (Index c : children[static_cast<std::size_t>(m)]) queue.push_back(c);
  }
  assert(plan.evaluation_order.size() == g.parent.size());
  return plan;
}

namespace {

struct ConstructContext {
  GeneratedSystem system;
  Index bound;
  std::mutex mutex;
  std::unordered_map<Index, Int> values;

  ConstructContext(GeneratedSystem sys, Index b)
      : system(std::move(sys)), bound(b) {}

  Int get(Index n, Index depth, Index max_depth) {
    if (depth > max_depth) {
      // The dependency plan guarantees strictly decreasing recursion; this
      // cannot fire for a plan that resolve() accepted.
      throw std::logic_error("generated-system recursion exceeded its bound");
    }
    {
      std::lock_guard<std::mutex> lock(mutex);
      auto it = values.find(n);
      if (it != values.end()) return it->second;
    }
    const Index k = system.k();
    const Index q = n / k;
    assert(q >= system.cutoff());
    const auto& rule = system.rule(n % k);
    const Int x = get(q + rule.shift, depth + 1, max_depth);
    Int value = rule.poly.value_at(q, x);
    std::lock_guard<std::mutex> lock(mutex);
    return values.emplace(n, std::move(value)).first->second;
  }
};

}  // namespace

Sequence construct(const GeneratedSystem& sys) {
  DependencyPlan plan = resolve(sys);
  if (!plan.required_seeds.empty()) {
    std::ostringstream os;
    os << "system is underdetermined; missing seeds for indices:";
    std::vector<Index> missing(plan.required_seeds.begin(),
                               plan.required_seeds.end());
    for (Index m : missing) os << ' ' << m;
    throw UnderdeterminedSystem(os.str(), std::move(missing));
  }
  auto ctx = std::make_shared<ConstructContext>(sys, plan.bound);
  for (const auto& [index, value] : sys.seeds()) ctx->values[index] = value;
  if (plan.resolved_zero && !ctx->values.count(0)) {
    ctx->values[0] = *plan.resolved_zero;
  }
  std::string desc = sys.descriptor();
  return Sequence(std::move(desc), [ctx](Index n) -> Int {
    const Index max_depth =
        ctx->bound + 4 * (static_cast<Index>(bit_length(Int(n))) + 2) + 64;
    return ctx->get(n, 0, max_depth);
  });
}

RuleReport verify_rules(const GeneratedSystem& sys, const Sequence& u,
                        Index horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  RuleReport report;
  report.horizon = horizon;
  const Index k = sys.k();
  for (Index n = sys.cutoff(); n < horizon; ++n) {
    for (const auto& rule : sys.rules()) {
      Int expected = rule.poly.value_at(n, u(n + rule.shift));
      Int got = u(k * n + rule.residue);
      if (expected != got) {
        report.violations.push_back(RuleViolation{
            k * n + rule.residue, rule.residue, std::move(expected),
            std::move(got)});
      }
    }
  }
  return report;
}

}  // namespace seqlab
