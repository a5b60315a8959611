// Copyright 2026 The matchdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MATCHDYN_RATIONAL_HPP_
#define MATCHDYN_RATIONAL_HPP_

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace matchdyn {

// Exact weights and utilities. Comparisons are exact; no epsilon anywhere.
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q", "-p/q", integers and plain decimals such as "2.75".
// Throws ValidationError on anything else, including a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical text form: "p" for integers, "p/q" in lowest terms otherwise.
std::string format_rational(const Rational& value);

}  // namespace matchdyn

#endif  // MATCHDYN_RATIONAL_HPP_
