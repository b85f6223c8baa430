#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>

#include "peakpack/errors.hpp"

namespace peakpack {

using Int = std::int64_t;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
// Expression templates are switched off so that every arithmetic expression
// yields a plain Rat; mixing lazy expression types with std::max, ternaries
// and auto is a rich source of compile errors and dangling references.
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Rat ratOf(Int n) { return Rat(n); }

inline Rat ratOf(Int num, Int den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  return Rat(BigInt(num), BigInt(den));
}

inline BigInt floorBig(const Rat& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);  // cpp_rational keeps den > 0
  BigInt q = num / den;         // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

inline BigInt ceilBig(const Rat& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  BigInt q = num / den;
  if (num > 0 && q * den != num) q += 1;
  return q;
}

inline Int toInt(const BigInt& b) { return b.convert_to<Int>(); }

inline Int floorRat(const Rat& r) { return toInt(floorBig(r)); }
inline Int ceilRat(const Rat& r) { return toInt(ceilBig(r)); }

inline bool isInteger(const Rat& r) { return denominator(r) == 1; }

// Serialized as "num/den" in lowest terms, always including the denominator
// ("7/1" for integers) so round-trips are bit-exact.
inline std::string ratToString(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline std::optional<Rat> ratFromString(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (s.empty()) return std::nullopt;
      return Rat(BigInt(s));
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (num.empty() || den.empty()) return std::nullopt;
    BigInt d(den);
    if (d == 0) return std::nullopt;
    return Rat(BigInt(num), d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace peakpack
