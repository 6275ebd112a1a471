// Copyright 2026 The commgame Authors
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

#ifndef COMMGAME_RATIONAL_HPP_
#define COMMGAME_RATIONAL_HPP_

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace commgame {

// The sole numeric scalar of the core. Arbitrary-precision exact fraction,
// kept in canonical form (gcd 1, positive denominator) by the backing type.
// Expression templates are off: every operation yields a concrete value, so
// deduced (auto) results never dangle.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Rational rat(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

// Parses "int" or "int/int" with optional leading '-'; nothing else.
// The denominator must be positive after normalization (e.g. "1/-2" is
// rejected, "-1/2" is fine).
std::optional<Rational> parse_rational(std::string_view text);

// Canonical rendering: "n" when the denominator is 1, otherwise "n/d".
std::string to_string(const Rational& r);

// Fixed three-decimal rendering using round-half-to-even. Rendering only;
// exact strings stay authoritative everywhere.
std::string to_decimal3(const Rational& r);

}  // namespace commgame

#endif  // COMMGAME_RATIONAL_HPP_
