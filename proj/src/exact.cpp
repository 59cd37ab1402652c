#include "seqlab/exact.hpp"

namespace seqlab {

Int Int::from_decimal(const std::string& text) {
  std::size_t start = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
  if (start == text.size()) {
    throw std::invalid_argument("not a decimal integer: '" + text + "'");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw std::invalid_argument("not a decimal integer: '" + text + "'");
    }
  }
  return Int(mp::cpp_int(text));
}

std::int64_t Int::to_int64() const {
  static const mp::cpp_int lo = std::numeric_limits<std::int64_t>::min();
  static const mp::cpp_int hi = std::numeric_limits<std::int64_t>::max();
  if (v_ < lo || v_ > hi) {
    throw std::overflow_error("integer does not fit in 64 bits: " + v_.str());
  }
  return v_.convert_to<std::int64_t>();
}

Int abs(const Int& a) { return Int(mp::abs(a.raw())); }

Int pow(const Int& base, std::uint64_t exponent) {
  return Int(mp::pow(base.raw(), static_cast<unsigned>(exponent)));
}

std::uint64_t bit_length(const Int& a) {
  if (a.is_zero()) return 0;
  return static_cast<std::uint64_t>(mp::msb(mp::abs(a.raw()))) + 1;
}

double log2_magnitude(const Int& a) {
  if (a.is_zero()) throw std::domain_error("log2 of zero");
  mp::cpp_int v = mp::abs(a.raw());
  const std::uint64_t bits = static_cast<std::uint64_t>(mp::msb(v)) + 1;
  if (bits <= 52) {
    return std::log2(v.convert_to<double>());
  }
  const std::uint64_t drop = bits - 52;
  const double mantissa = mp::cpp_int(v >> drop).convert_to<double>();
  return std::log2(mantissa) + static_cast<double>(drop);
}

Rat::Rat(const Int& num, const Int& den) : v_(num.raw()) {
  if (den.is_zero()) throw std::domain_error("rational with zero denominator");
  v_ /= mp::cpp_rational(den.raw());
}

Int Rat::to_integer() const {
  if (!is_integer()) {
    throw std::logic_error("rational is not an integer: " + v_.str());
  }
  return Int(mp::numerator(v_));
}

}  // namespace seqlab
