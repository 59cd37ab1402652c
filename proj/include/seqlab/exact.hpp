#pragma once

// Exact arithmetic scalars for the whole library.
//
// Int and Rat are thin value wrappers around boost::multiprecision's
// cpp_int / cpp_rational with a deliberately narrow constructor set, so
// they behave as clean Eigen scalars (no stray implicit conversions
// during overload resolution). All sequence values, matrix entries and
// solver coefficients in this project are built from these two types;
// there is no floating point anywhere in the exact paths.

#include <Eigen/Dense>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace seqlab {

namespace mp = boost::multiprecision;

using Index = std::int64_t;

class Int {
 public:
  Int() = default;
  template <typename T, typename = std::enable_if_t<std::is_integral_v<T>>>
  Int(T v) : v_(v) {}
  explicit Int(mp::cpp_int v) : v_(std::move(v)) {}

  // Parses an optionally signed decimal literal; anything else throws.
  static Int from_decimal(const std::string& text);

  const mp::cpp_int& raw() const { return v_; }

  Int& operator+=(const Int& o) { v_ += o.v_; return *this; }
  Int& operator-=(const Int& o) { v_ -= o.v_; return *this; }
  Int& operator*=(const Int& o) { v_ *= o.v_; return *this; }
  Int& operator/=(const Int& o) { v_ /= o.v_; return *this; }
  Int& operator%=(const Int& o) { v_ %= o.v_; return *this; }

  friend Int operator+(const Int& a, const Int& b) { return Int(a.v_ + b.v_); }
  friend Int operator-(const Int& a, const Int& b) { return Int(a.v_ - b.v_); }
  friend Int operator*(const Int& a, const Int& b) { return Int(a.v_ * b.v_); }
  friend Int operator/(const Int& a, const Int& b) { return Int(a.v_ / b.v_); }
  friend Int operator%(const Int& a, const Int& b) { return Int(a.v_ % b.v_); }
  Int operator-() const { return Int(-v_); }

  friend bool operator==(const Int& a, const Int& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Int& a, const Int& b) { return a.v_ != b.v_; }
  friend bool operator<(const Int& a, const Int& b) { return a.v_ < b.v_; }
  friend bool operator>(const Int& a, const Int& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Int& a, const Int& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const Int& a, const Int& b) { return a.v_ >= b.v_; }

  bool is_zero() const { return v_.is_zero(); }
  int sign() const { return v_.sign(); }
  std::string str() const { return v_.str(); }

  // Exact only when the value fits; throws std::overflow_error otherwise.
  std::int64_t to_int64() const;

  friend std::ostream& operator<<(std::ostream& os, const Int& a) {
    return os << a.v_;
  }

 private:
  mp::cpp_int v_;
};

Int abs(const Int& a);
Int pow(const Int& base, std::uint64_t exponent);

// Number of bits in |a|; 0 for a == 0.
std::uint64_t bit_length(const Int& a);

// log2(|a|) as a double, accurate to ~1e-14 regardless of magnitude.
// Only the growth probe consumes this; exact code never does.
double log2_magnitude(const Int& a);

class Rat {
 public:
  Rat() = default;
  template <typename T, typename = std::enable_if_t<std::is_integral_v<T>>>
  Rat(T v) : v_(v) {}
  Rat(const Int& v) : v_(v.raw()) {}
  Rat(const Int& num, const Int& den);
  explicit Rat(mp::cpp_rational v) : v_(std::move(v)) {}

  const mp::cpp_rational& raw() const { return v_; }

  Int numerator() const { return Int(mp::numerator(v_)); }
  Int denominator() const { return Int(mp::denominator(v_)); }
  bool is_integer() const { return mp::denominator(v_) == 1; }
  bool is_zero() const { return v_.is_zero(); }

  // Requires is_integer(); throws CorruptRepresentation-grade logic_error.
  Int to_integer() const;

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { v_ /= o.v_; return *this; }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.v_ + b.v_); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.v_ - b.v_); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.v_ * b.v_); }
  friend Rat operator/(const Rat& a, const Rat& b) { return Rat(a.v_ / b.v_); }
  Rat operator-() const { return Rat(-v_); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& a) {
    return os << a.v_;
  }

 private:
  mp::cpp_rational v_;
};

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

}  // namespace seqlab

namespace Eigen {

template <>
struct NumTraits<seqlab::Int> {
  using Real = seqlab::Int;
  using NonInteger = seqlab::Rat;
  using Literal = seqlab::Int;
  using Nested = seqlab::Int;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 60,
  };
  static int digits10() { return 0; }
};

template <>
struct NumTraits<seqlab::Rat> {
  using Real = seqlab::Rat;
  using NonInteger = seqlab::Rat;
  using Literal = seqlab::Rat;
  using Nested = seqlab::Rat;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 120,
  };
  static int digits10() { return 0; }
};

}  // namespace Eigen
