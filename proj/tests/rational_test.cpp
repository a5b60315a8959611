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

#include "matchdyn/rational.hpp"

#include <gtest/gtest.h>

#include "matchdyn/errors.hpp"

namespace matchdyn {
namespace {

TEST(RationalTest, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("2.75"), Rational(11, 4));
  EXPECT_EQ(parse_rational(" .5 "), Rational(1, 2));
  EXPECT_EQ(parse_rational("+4/2"), Rational(2));
}

TEST(RationalTest, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "a", "1/", "/2", "1.2.3", "--1", ".", "1/-2"}) {
    EXPECT_THROW(parse_rational(bad), ValidationError) << bad;
  }
}

TEST(RationalTest, FormatsInLowestTerms) {
  EXPECT_EQ(format_rational(Rational(6, 4)), "3/2");
  EXPECT_EQ(format_rational(Rational(-8, 4)), "-2");
  EXPECT_EQ(format_rational(Rational(0)), "0");
}

TEST(RationalTest, FormatThenParseIsIdentity) {
  for (int p = -12; p <= 12; ++p) {
    for (int q = 1; q <= 7; ++q) {
      Rational r(p, q);
      EXPECT_EQ(parse_rational(format_rational(r)), r);
    }
  }
}

}  // namespace
}  // namespace matchdyn
