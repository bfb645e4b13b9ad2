#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace wdist {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt ipow(std::uint64_t base, unsigned exponent) {
  return boost::multiprecision::pow(BigInt(base), exponent);
}

inline std::string to_decimal(const BigInt& value) { return value.str(); }

// Exact 64-bit power; the caller guarantees the result fits.
constexpr std::uint64_t upow(std::uint64_t base, unsigned exponent) {
  std::uint64_t r = 1;
  while (exponent-- > 0) r *= base;
  return r;
}

}  // namespace wdist
