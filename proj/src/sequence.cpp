#include "seqlab/sequence.hpp"

#include <mutex>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace seqlab {

namespace {

void require_index(Index n) {
  if (n < 0) {
    throw std::invalid_argument("sequence index must be nonnegative, got " +
                                std::to_string(n));
  }
}

std::string list_str(const std::vector<Int>& values) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << values[i];
  }
  os << ']';
  return os.str();
}

}  // namespace

Sequence::Sequence(std::string descriptor, Evaluator evaluator)
    : state_(std::make_shared<State>(
          State{std::move(descriptor), std::move(evaluator)})) {
  if (!state_->evaluator) {
    throw std::invalid_argument("sequence requires an evaluator");
  }
}

Int Sequence::operator()(Index n) const {
  require_index(n);
  return state_->evaluator(n);
}

const std::string& Sequence::descriptor() const { return state_->descriptor; }

Int eval(const Sequence& u, Index n) { return u(n); }

TruncatedSequence prefix(const Sequence& u, Index length) {
  if (length < 1) {
    throw std::invalid_argument("prefix length must be >= 1");
  }
  TruncatedSequence out;
  out.values.resize(length);
  for (Index n = 0; n < length; ++n) out.values(n) = u(n);
  out.origin = u.descriptor();
  return out;
}

Sequence combine(RingOp op, const Sequence& u, const Sequence& v) {
  const char symbol = op == RingOp::add ? '+' : '*';
  std::string desc = "(" + u.descriptor() + symbol + v.descriptor() + ")";
  if (op == RingOp::add) {
    return Sequence(std::move(desc),
                    [u, v](Index n) { return u(n) + v(n); });
  }
  return Sequence(std::move(desc), [u, v](Index n) { return u(n) * v(n); });
}

Sequence add(const Sequence& u, const Sequence& v) {
  return combine(RingOp::add, u, v);
}

Sequence mul(const Sequence& u, const Sequence& v) {
  return combine(RingOp::mul, u, v);
}

Sequence scale(const Int& c, const Sequence& u) {
  return Sequence("(" + c.str() + "*" + u.descriptor() + ")",
                  [c, u](Index n) { return c * u(n); });
}

Sequence shift(const Sequence& u, Index j) {
  if (j < 0) throw std::invalid_argument("shift must be nonnegative");
  if (j == 0) return u;
  return Sequence("S^" + std::to_string(j) + "(" + u.descriptor() + ")",
                  [u, j](Index n) { return u(n + j); });
}

SequencePolynomial::SequencePolynomial(std::vector<Sequence> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) {
    throw std::invalid_argument("sequence polynomial needs a coefficient");
  }
  std::ostringstream os;
  os << "poly[";
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i) os << ';';
    os << coefficients_[i].descriptor();
  }
  os << ']';
  descriptor_ = os.str();
}

SequencePolynomial SequencePolynomial::constants(
    const std::vector<Int>& coefficients) {
  std::vector<Sequence> seqs;
  seqs.reserve(coefficients.size());
  for (const Int& c : coefficients) seqs.push_back(constant(c));
  return SequencePolynomial(std::move(seqs));
}

Int SequencePolynomial::value_at(Index n, const Int& x) const {
  // Horner, highest coefficient first.
  Int acc = coefficients_.back()(n);
  for (std::size_t i = coefficients_.size() - 1; i-- > 0;) {
    acc = acc * x + coefficients_[i](n);
  }
  return acc;
}

Sequence apply_poly(const SequencePolynomial& f, const Sequence& u) {
  return Sequence(f.descriptor() + "(" + u.descriptor() + ")",
                  [f, u](Index n) { return f.value_at(n, u(n)); });
}

Sequence chi_pow2() {
  return Sequence("chi_pow2", [](Index n) -> Int {
    return (n >= 1 && (n & (n - 1)) == 0) ? 1 : 0;
  });
}

Sequence thue_morse() {
  return Sequence("thue_morse", [](Index n) -> Int {
    int parity = 0;
    for (Index m = n; m > 0; m &= m - 1) parity ^= 1;
    return parity;
  });
}

Sequence digit_sum(Index base) {
  if (base < 2) throw DefinitionError("digit_sum requires base >= 2");
  return Sequence("digit_sum(" + std::to_string(base) + ")",
                  [base](Index n) -> Int {
                    Index s = 0;
                    for (Index m = n; m > 0; m /= base) s += m % base;
                    return s;
                  });
}

Sequence identity() {
  return Sequence("identity", [](Index n) -> Int { return n; });
}

Sequence constant(const Int& c) {
  return Sequence("constant(" + c.str() + ")", [c](Index) { return c; });
}

Sequence periodic(std::vector<Int> cycle, std::vector<Int> preperiod) {
  if (cycle.empty()) throw DefinitionError("periodic requires a nonempty cycle");
  std::string desc =
      "periodic(" + list_str(cycle) + ";" + list_str(preperiod) + ")";
  auto cyc = std::make_shared<const std::vector<Int>>(std::move(cycle));
  auto pre = std::make_shared<const std::vector<Int>>(std::move(preperiod));
  return Sequence(std::move(desc), [cyc, pre](Index n) -> Int {
    if (n < static_cast<Index>(pre->size())) {
      return (*pre)[static_cast<std::size_t>(n)];
    }
    const Index m = (n - static_cast<Index>(pre->size())) %
                    static_cast<Index>(cyc->size());
    return (*cyc)[static_cast<std::size_t>(m)];
  });
}

Sequence builtin(const std::string& name, const BuiltinParams& params) {
  if (name == "chi_pow2") return chi_pow2();
  if (name == "thue_morse") return thue_morse();
  if (name == "digit_sum") return digit_sum(params.base);
  if (name == "identity") return identity();
  if (name == "constant") return constant(params.value);
  if (name == "periodic") return periodic(params.cycle, params.preperiod);
  throw DefinitionError("unknown builtin sequence: '" + name + "'");
}

Sequence memoize(const Sequence& u) {
  struct Cache {
    std::mutex mutex;
    std::unordered_map<Index, Int> values;
  };
  auto cache = std::make_shared<Cache>();
  return Sequence(u.descriptor(), [u, cache](Index n) -> Int {
    {
      std::lock_guard<std::mutex> lock(cache->mutex);
      auto it = cache->values.find(n);
      if (it != cache->values.end()) return it->second;
    }
    Int value = u(n);
    std::lock_guard<std::mutex> lock(cache->mutex);
    return cache->values.emplace(n, std::move(value)).first->second;
  });
}

}  // namespace seqlab
