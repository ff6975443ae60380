// Copyright 2026 The capnet Authors.
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

#ifndef CAPNET_RATIONAL_HPP_
#define CAPNET_RATIONAL_HPP_

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace capnet {

// Exact arbitrary-precision rational; used wherever a quotient must not be
// rounded (densities, dual values, search grids, scores).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

// Smallest integer >= q.
inline BigInt ceil_of(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt quot = num / den;
  if (quot * den < num) ++quot;
  return quot;
}

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace capnet

#endif  // CAPNET_RATIONAL_HPP_
