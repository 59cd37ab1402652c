#pragma once

// Exact integer sequences as immutable first-class values.
//
// A Sequence is a total, deterministic map n >= 0 -> Int together with a
// canonical descriptor string used for equality-by-definition and caching.
// Evaluation is safe under concurrent invocation; memoization, where used,
// is internally synchronized and semantically invisible.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "seqlab/errors.hpp"
#include "seqlab/exact.hpp"

namespace seqlab {

class Sequence {
 public:
  using Evaluator = std::function<Int(Index)>;

  Sequence() = default;
  Sequence(std::string descriptor, Evaluator evaluator);

  // Exact value at n; throws std::invalid_argument for n < 0.
  Int operator()(Index n) const;

  const std::string& descriptor() const;
  explicit operator bool() const { return static_cast<bool>(state_); }

 private:
  struct State {
    std::string descriptor;
    Evaluator evaluator;
  };
  std::shared_ptr<const State> state_;
};

Int eval(const Sequence& u, Index n);

// Finite window [u(0), ..., u(length-1)] used by all empirical checks.
struct TruncatedSequence {
  IntVector values;
  std::string origin;

  Index length() const { return static_cast<Index>(values.size()); }
};

TruncatedSequence prefix(const Sequence& u, Index length);

enum class RingOp { add, mul };

Sequence combine(RingOp op, const Sequence& u, const Sequence& v);
Sequence add(const Sequence& u, const Sequence& v);
Sequence mul(const Sequence& u, const Sequence& v);
Sequence scale(const Int& c, const Sequence& u);
Sequence shift(const Sequence& u, Index j);

inline Sequence operator+(const Sequence& u, const Sequence& v) { return add(u, v); }
inline Sequence operator*(const Sequence& u, const Sequence& v) { return mul(u, v); }

// Polynomial whose coefficients are sequences; index = degree.
class SequencePolynomial {
 public:
  explicit SequencePolynomial(std::vector<Sequence> coefficients);

  // Constant-coefficient convenience, coefficients[i] = coefficient of x^i.
  static SequencePolynomial constants(const std::vector<Int>& coefficients);

  Index degree() const { return static_cast<Index>(coefficients_.size()) - 1; }
  const Sequence& coefficient(Index i) const { return coefficients_[static_cast<std::size_t>(i)]; }
  const std::vector<Sequence>& coefficients() const { return coefficients_; }
  const std::string& descriptor() const { return descriptor_; }

  // Pointwise value sum_i a_i(n) * x^i.
  Int value_at(Index n, const Int& x) const;

 private:
  std::vector<Sequence> coefficients_;
  std::string descriptor_;
};

Sequence apply_poly(const SequencePolynomial& f, const Sequence& u);

// Built-in sequences.
Sequence chi_pow2();
Sequence thue_morse();
Sequence digit_sum(Index base);
Sequence identity();
Sequence constant(const Int& c);
Sequence periodic(std::vector<Int> cycle, std::vector<Int> preperiod = {});

struct BuiltinParams {
  Int value = 0;           // constant
  Index base = 2;          // digit_sum
  std::vector<Int> cycle;  // periodic
  std::vector<Int> preperiod;
};

// Named lookup; unknown names raise DefinitionError.
Sequence builtin(const std::string& name, const BuiltinParams& params = {});

// Wraps u with an internally synchronized value cache.
Sequence memoize(const Sequence& u);

}  // namespace seqlab
