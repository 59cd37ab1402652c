#include "seqlab/hankel.hpp"

#include <cassert>

namespace seqlab {

IntMatrix hankel_matrix(const Sequence& source, Index offset, Index rows,
                        Index cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("hankel_matrix requires rows, cols >= 1");
  }
  if (offset < 0) throw std::invalid_argument("hankel offset must be >= 0");
  // One evaluation per distinct index; the matrix reuses the diagonal band.
  IntVector band(rows + cols - 1);
  for (Index t = 0; t < rows + cols - 1; ++t) band(t) = source(offset + t);
  IntMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = band(i + j);
  }
  return m;
}

Int bareiss_determinant(IntMatrix m) {
  const Index n = m.rows();
  if (m.cols() != n) {
    throw std::invalid_argument("determinant requires a square matrix");
  }
  if (n == 0) return 1;
  int sign = 1;
  Int prev = 1;
  for (Index step = 0; step < n - 1; ++step) {
    if (m(step, step).is_zero()) {
      Index pivot_row = -1;
      for (Index i = step + 1; i < n; ++i) {
        if (!m(i, step).is_zero()) {
          pivot_row = i;
          break;
        }
      }
      if (pivot_row < 0) return 0;
      m.row(step).swap(m.row(pivot_row));
      sign = -sign;
    }
    const Int pivot = m(step, step);
    for (Index i = step + 1; i < n; ++i) {
      for (Index j = step + 1; j < n; ++j) {
        // Fraction-free update: the division by the previous pivot is exact.
        m(i, j) = (m(i, j) * pivot - m(i, step) * m(step, j)) / prev;
      }
      m(i, step) = 0;
    }
    prev = pivot;
  }
  return sign < 0 ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

namespace {

// True when some length-n window of p starting in [offset, offset+n) contains
// no power of two, i.e. the Hankel matrix has an all-zero row (and, by
// symmetry of the band, an all-zero column pattern is the same scan).
bool has_zero_row(Index offset, Index n) {
  // Row i covers indices [offset+i, offset+i+n-1].
  Index next_pow = 1;
  for (Index i = 0; i < n; ++i) {
    const Index lo = offset + i;
    const Index hi = lo + n - 1;
    while (next_pow < lo) next_pow *= 2;
    if (next_pow > hi) return true;
  }
  return false;
}

}  // namespace

DeterminantValue det_oracle(Index m, Index n) {
  if (m < 0 || n < 0) {
    throw std::invalid_argument("det_oracle requires m, n >= 0");
  }
  if (n == 0) return DeterminantValue{m, n, Int(1), Provenance::oracle};
  if (has_zero_row(m, n)) {
    return DeterminantValue{m, n, Int(0), Provenance::oracle};
  }
  Int value = bareiss_determinant(hankel_matrix(chi_pow2(), m, n, n));
  return DeterminantValue{m, n, std::move(value), Provenance::oracle};
}

namespace {

std::uint64_t pack(Index m, Index n) {
  // n >= -1 by contract; bias it into the unsigned key.
  return (static_cast<std::uint64_t>(m) << 32) ^
         static_cast<std::uint64_t>(n + 1);
}

Int parity_sign(Index n) { return (n & 1) ? Int(-1) : Int(1); }

}  // namespace

Int DeterminantTable::at(Index m, Index n) const {
  if (n <= 0) return n < 0 ? Int(0) : Int(1);  // d(m,0)=1, d(m,-1)=0
  if (m >= (Index(1) << 32) || n >= (Index(1) << 32)) {
    // The memo key packs (m, n+1) into one 64-bit word.
    throw std::invalid_argument("determinant indices exceed 2^32");
  }
  if (m == 0 && n == 1) return 0;  // 1x1 matrix [p(0)]; the recurrence at
                                   // n = 0 is a tautology, so it is seeded.
  const std::uint64_t key = pack(m, n);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  const Index h = n / 2;
  const bool odd_n = (n & 1) != 0;
  Int value;
  if (m == 0) {
    value = odd_n ? at(0, h + 1) * at(1, h) - at(2, h) * at(3, h - 1)
                  : at(0, h) * at(1, h) - at(2, h - 1) * at(3, h - 1);
  } else if (m == 1) {
    const Int base = odd_n ? at(2, h) : at(1, h);
    value = parity_sign(h) * base * base;
  } else if ((m & 1) == 0) {
    const Index s = m / 2;
    value = odd_n ? at(s, h + 1) * at(s + 1, h) : at(s, h) * at(s + 1, h);
  } else {
    value = 0;
    if (!odd_n) {
      const Index s = m / 2;
      const Int base = at(s + 1, h);
      value = parity_sign(h) * base * base;
    }
  }
  std::lock_guard<std::mutex> lock(mutex_);
  return memo_.emplace(key, std::move(value)).first->second;
}

DeterminantValue DeterminantTable::recurrence(Index m, Index n) const {
  if (m < 0 || n < -1) {
    throw std::invalid_argument("det_recurrence requires m >= 0, n >= -1");
  }
  return DeterminantValue{m, n, at(m, n), Provenance::recurrence};
}

namespace {

const DeterminantTable& shared_table() {
  static DeterminantTable table;
  return table;
}

}  // namespace

DeterminantValue det_recurrence(Index m, Index n) {
  return shared_table().recurrence(m, n);
}

Sequence det_row_sequence(Index m) {
  if (m < 0) throw std::invalid_argument("determinant row requires m >= 0");
  return Sequence("hankel_det_row(" + std::to_string(m) + ")",
                  [m](Index n) { return shared_table().at(m, n); });
}

Int det_offset1_closed(Index n) {
  if (n < 0) throw std::invalid_argument("closed form requires n >= 0");
  return parity_sign(n / 2);
}

std::vector<int> morphism_word_prefix(int level) {
  if (level < 0) throw std::invalid_argument("morphism level must be >= 0");
  std::vector<int> a = {1, 1};
  std::vector<int> b = {1, -1};
  for (int step = 0; step < level; ++step) {
    std::vector<int> next_a;
    next_a.reserve(a.size() * 2);
    next_a.insert(next_a.end(), a.begin(), a.end());
    next_a.insert(next_a.end(), b.begin(), b.end());
    std::vector<int> next_b;
    next_b.reserve(a.size() * 2);
    for (int letter : a) next_b.push_back(-letter);
    next_b.insert(next_b.end(), b.begin(), b.end());
    a = std::move(next_a);
    b = std::move(next_b);
  }
  return a;
}

int epsilon(Index r) {
  if (r < 1) throw std::invalid_argument("epsilon is defined for r >= 1");
  static std::mutex mutex;
  static std::unordered_map<Index, int> memo = {{1, 1}};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = memo.find(r);
    if (it != memo.end()) return it->second;
  }
  const int value = (r & 1) ? epsilon(r / 2 + 1)
                            : static_cast<int>((epsilon(r / 2) + r / 2) & 1);
  std::lock_guard<std::mutex> lock(mutex);
  memo.emplace(r, value);
  return value;
}

namespace {

// k with 2^k < m <= 2^(k+1), defined for m >= 3 (so k >= 1).
Index dyadic_level(Index m) {
  if (m < 3) throw std::invalid_argument("dyadic level requires m >= 3");
  Index k = 0;
  while ((Index(1) << (k + 1)) < m) ++k;
  return k;
}

}  // namespace

SupportClass support_predicate(Index m, Index n) {
  if (n < 0) throw std::invalid_argument("support predicate requires n >= 0");
  const Index modulus = Index(1) << (dyadic_level(m) + 1);
  const Index r = n % modulus;
  const Index target = ((1 - m) % modulus + modulus) % modulus;
  return (r == 0 || r == target) ? SupportClass::nonzero_unit
                                 : SupportClass::zero;
}

std::pair<Int, Int> cigler_values(Index m, Index n) {
  if (m < 3) {
    throw std::invalid_argument("cigler_values requires m >= 3");
  }
  if (n < 1) throw std::invalid_argument("cigler_values requires n >= 1");
  const Index k = dyadic_level(m);
  const Index modulus = Index(1) << (k + 1);
  const Index r = m / 2;
  if (m & 1) {
    return {Int(1), (r & 1) ? Int(-1) : Int(1)};
  }
  const Index first = modulus * n;
  const Index second = modulus * n - m + 1;
  assert(second >= 0);
  int level = 0;
  while ((Index(1) << (level + 1)) <= first) ++level;
  const std::vector<int> word = morphism_word_prefix(level);
  // The checkpoint sign flips with the complement of epsilon: the identity
  // holds with epsilon seeded at 0, which is 1 - epsilon(r) for the printed
  // base 1. Cross-checked against the determinant oracle across even m.
  const Int sign = ((n + 1 + epsilon(r)) & 1) ? Int(-1) : Int(1);
  return {Int(word[static_cast<std::size_t>(first)]),
          sign * Int(word[static_cast<std::size_t>(second)])};
}

GeneratedSystem det_offset0_system() {
  const Sequence a = periodic({Int(1), Int(1), Int(-1), Int(-1)});
  const Sequence b =
      Sequence("hankel_b", [](Index n) {
        return shared_table().at(2, n - 1) * shared_table().at(3, n - 1);
      });
  const Sequence c =
      Sequence("hankel_c", [](Index n) {
        return shared_table().at(2, n) * shared_table().at(3, n - 1);
      });
  std::vector<GeneratedRule> rules;
  rules.push_back(GeneratedRule{
      0, SequencePolynomial({scale(Int(-1), b), a}), 0});
  rules.push_back(GeneratedRule{
      1, SequencePolynomial({scale(Int(-1), c), a}), 1});
  // d(0,0) = 1 by the empty-determinant convention; the rule at index 0 is a
  // tautology, so the value is pinned by a seed rather than the default.
  // d(0,1) = det [p(0)] = 0 seeds the index-1 self-loop.
  return GeneratedSystem(2, std::move(rules), 0,
                         {{0, Int(1)}, {1, Int(0)}});
}

}  // namespace seqlab
