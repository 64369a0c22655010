#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace gbd {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Integer& value);

/// Canonical "p/q" form with q > 0 and gcd(p, q) = 1. Integers print as "p/1".
std::string to_string(const Rational& value);

Integer parse_integer(std::string_view text);

/// Accepts "p/q" or a bare integer "p".
Rational parse_rational(std::string_view text);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(Integer(num), Integer(den));
}

}  // namespace gbd
