#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "seqlab/exact.hpp"

namespace seqlab {

// Malformed or self-contradictory sequence definition (unknown builtin,
// duplicate residue, non-decimal integer, ...).
class DefinitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A generated system demands seeds (cycle or below-cutoff indices) that
// were not supplied.
class UnderdeterminedSystem : public std::runtime_error {
 public:
  UnderdeterminedSystem(std::string what, std::vector<Index> indices)
      : std::runtime_error(std::move(what)), indices_(std::move(indices)) {}
  const std::vector<Index>& indices() const { return indices_; }

 private:
  std::vector<Index> indices_;
};

// The defining equations of a generated system admit no integer solution.
class InconsistentSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested horizon cannot distinguish or support the states/nodes the
// detection needs; raise the horizon and retry.
class HorizonExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Kernel closure succeeded on the construction horizon but the candidate
// failed extended-horizon verification.
class HorizonTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A linear representation produced a non-integer value.
class CorruptRepresentation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The growth probe's anchor value is too small to seed the divergence check.
class ProbeInapplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace seqlab
