// Copyright 2026 The wpcone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "wpcone/error.hpp"

namespace wpcone {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow_big(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

inline Rational pow_rational(const Rational& base, std::uint64_t exponent) {
  return Rational(pow_big(boost::multiprecision::numerator(base), exponent),
                  pow_big(boost::multiprecision::denominator(base), exponent));
}

/// Parses "3", "1.5", "-2.25" or "3/2" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty number");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      BigInt num(s.substr(0, slash));
      BigInt den(s.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in '" + s + "'");
      return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string whole = s.substr(0, dot);
      std::string frac = s.substr(dot + 1);
      bool negative = !whole.empty() && whole[0] == '-';
      if (negative || (!whole.empty() && whole[0] == '+')) whole.erase(0, 1);
      if (whole.empty()) whole = "0";
      if (frac.empty()) frac = "0";
      for (char c : whole + frac) {
        if (c < '0' || c > '9') throw ParseError("bad number '" + s + "'");
      }
      BigInt num(whole + frac);
      Rational r(num, pow_big(10, frac.size()));
      return negative ? Rational(-r) : r;
    }
    return Rational(BigInt(s));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "'");
  }
}

inline std::string to_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) {
    return boost::multiprecision::numerator(r).str();
  }
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace wpcone
