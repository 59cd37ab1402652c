#pragma once

// Test-only reference implementations, kept deliberately independent of the
// library's computation paths.

#include <random>
#include <vector>

#include "seqlab/exact.hpp"

namespace seqlab::testing {

// Cofactor (Laplace) expansion along the first row; exponential, for n <= 8.
inline Int laplace_det(const IntMatrix& m) {
  const Index n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int det = 0;
  for (Index j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    IntMatrix minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r) {
      Index cc = 0;
      for (Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = m(r, c);
      }
    }
    const Int term = m(0, j) * laplace_det(minor);
    det += (j & 1) ? -term : term;
  }
  return det;
}

// Thue-Morse by its defining recurrence t(0)=0, t(2n)=t(n), t(2n+1)=1-t(n).
inline Int thue_morse_recursive(Index n) {
  if (n == 0) return 0;
  const Int rest = thue_morse_recursive(n / 2);
  return (n & 1) ? Int(1) - rest : rest;
}

// Digit sum via Legendre's identity s_k(n) = n - (k-1) sum_{i>=1} floor(n/k^i),
// avoiding the digit loop the library uses.
inline Int digit_sum_legendre(Index n, Index k) {
  Index total = 0;
  for (Index q = n / k; q > 0; q /= k) total += q;
  return Int(n) - Int(k - 1) * Int(total);
}

// Powers-of-two indicator by explicit enumeration.
inline Int chi_pow2_enumerated(Index n) {
  for (Index p = 1; p > 0 && p <= n; p *= 2) {
    if (p == n) return 1;
  }
  return 0;
}

inline IntMatrix random_int_matrix(std::mt19937& rng, Index n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m(i, j) = dist(rng);
  }
  return m;
}

}  // namespace seqlab::testing
