#pragma once

// Hankel determinants of the characteristic sequence of powers of two.
//
// d(m, n) = det of the n x n Hankel matrix whose (i, j) entry is p(m+i+j),
// where p is the 0/1 indicator of powers of two. Two independent routes are
// provided: an exact fraction-free determinant oracle and a memoized
// recurrence engine, plus the closed forms, the morphism word generating the
// m = 2 row, the epsilon sequence and the Cigler checkpoint identities.

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seqlab/generated_system.hpp"
#include "seqlab/sequence.hpp"

namespace seqlab {

// rows x cols window matrix: entry (i, j) = source(offset + i + j).
IntMatrix hankel_matrix(const Sequence& source, Index offset, Index rows,
                        Index cols);

// Exact determinant by fraction-free (Bareiss) elimination; rows are swapped
// onto zero pivots with the sign tracked. The 0 x 0 matrix has determinant 1.
Int bareiss_determinant(IntMatrix m);

enum class Provenance { oracle, recurrence, closed_form };

struct DeterminantValue {
  Index m = 0;
  Index n = 0;
  Int value;
  Provenance provenance = Provenance::oracle;
};

// d(m, n) straight from the definition: Bareiss on the realized matrix.
DeterminantValue det_oracle(Index m, Index n);

// Memoized recurrence engine for d(m, n). The d(m,0)=1, d(m,-1)=0 boundary
// conventions live inside this table; the public n ranges over n >= -1.
// Concurrent lookups are safe (idempotent inserts under a mutex).
class DeterminantTable {
 public:
  DeterminantValue recurrence(Index m, Index n) const;

  // Raw value, shared by the recurrence cases.
  Int at(Index m, Index n) const;

 private:
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::uint64_t, Int> memo_;
};

// Shared-table convenience entry point.
DeterminantValue det_recurrence(Index m, Index n);

// The m-th determinant row as a Sequence, n -> d(m, n), via the shared table.
Sequence det_row_sequence(Index m);

// d(1, n) = (-1)^floor(n/2).
Int det_offset1_closed(Index n);

// A_level over {-1, +1}: A_0 = 1,1; B_0 = 1,-1; A_n = A_{n-1} B_{n-1},
// B_n = conj(A_{n-1}) B_{n-1}. Length 2^(level+1); A_level is a prefix of
// A_{level+1} and the limit word is the m = 2 determinant row.
std::vector<int> morphism_word_prefix(int level);

// epsilon_1 = 1, epsilon_{2r} = (epsilon_r + r) mod 2,
// epsilon_{2r+1} = epsilon_{r+1}; defined for r >= 1.
int epsilon(Index r);

enum class SupportClass { zero, nonzero_unit };

// Zero/nonzero pattern of the m-th row for m >= 3: with 2^k < m <= 2^(k+1),
// d(m, n) is a unit iff n = 0 or 1-m modulo 2^(k+1).
SupportClass support_predicate(Index m, Index n);

// The two checkpoint values (d(m, 2^(k+1) n), d(m, 2^(k+1) n - m + 1)) for
// m >= 3, n >= 1, evaluated by closed form; the even case reads the m = 2
// row from the morphism word so the pair is an independent cross-check
// against the recurrence.
std::pair<Int, Int> cigler_values(Index m, Index n);

// P M P^T for the even-rows-then-odd-rows permutation P; preserves the
// determinant and sends a Hankel matrix into its 2x2 interleaved block form.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
interleave_conjugate(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Index n = m.rows();
  if (m.cols() != n) {
    throw std::invalid_argument("interleave_conjugate requires a square matrix");
  }
  std::vector<Index> perm;
  perm.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; i += 2) perm.push_back(i);
  for (Index i = 1; i < n; i += 2) perm.push_back(i);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      out(i, j) = m(perm[static_cast<std::size_t>(i)],
                    perm[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

// The k = 2 generated system with shift whose constructed sequence is the
// m = 0 determinant row: u(2n) = a(n) u(n) - b(n), u(2n+1) = a(n) u(n+1) - c(n)
// with a = d(1, .), b(n) = d(2, n-1) d(3, n-1), c(n) = d(2, n) d(3, n-1).
GeneratedSystem det_offset0_system();

}  // namespace seqlab
