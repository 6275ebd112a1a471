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

#include "commgame/rational.hpp"

#include <cctype>

namespace commgame {

namespace {

bool parse_integer(std::string_view text, BigInt* out) {
  if (text.empty()) return false;
  std::size_t i = 0;
  if (text[0] == '-') {
    i = 1;
    if (text.size() == 1) return false;
  }
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) return false;
  }
  *out = BigInt(std::string(text));
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  const std::size_t slash = text.find('/');
  BigInt num;
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, &num)) return std::nullopt;
    return Rational(num);
  }
  BigInt den;
  if (!parse_integer(text.substr(0, slash), &num)) return std::nullopt;
  if (!parse_integer(text.substr(slash + 1), &den)) return std::nullopt;
  if (den <= 0) return std::nullopt;
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

std::string to_decimal3(const Rational& r) {
  // Scale by 1000 and round to the nearest integer, ties to even.
  const Rational scaled = r * 1000;
  BigInt floor_val = numerator(scaled) / denominator(scaled);
  if (scaled < 0 && Rational(floor_val) != scaled) floor_val -= 1;
  const Rational frac = scaled - Rational(floor_val);
  BigInt milli = floor_val;
  if (frac > Rational(1, 2)) {
    milli += 1;
  } else if (frac == Rational(1, 2)) {
    if (milli % 2 != 0) milli += 1;
  }
  const bool negative = milli < 0;
  BigInt mag = negative ? BigInt(-milli) : milli;
  const BigInt whole = mag / 1000;
  const BigInt rest = mag % 1000;
  std::string digits = rest.str();
  while (digits.size() < 3) digits.insert(digits.begin(), '0');
  std::string out;
  if (negative) out += '-';
  out += whole.str();
  out += '.';
  out += digits;
  return out;
}

}  // namespace commgame
