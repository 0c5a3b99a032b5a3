// Copyright 2026 The Levels Authors
// SPDX-License-Identifier: Apache-2.0

#include "levels/dsl.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "levels/assets.hpp"

using namespace levels;
using levels::dsl::parse;
using levels::dsl::serialize;

namespace {

// Text covered by a span; spans are line/column based.
std::string spanned(const std::string& source, const dsl::SourceSpan& span) {
  std::istringstream lines(source);
  std::string line;
  for (std::size_t i = 0; i < span.line; ++i) std::getline(lines, line);
  return line.substr(span.column - 1, span.length);
}

std::string first_error(const std::string& source) {
  const auto r = parse(source);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(r.structures.empty());
  return r.diagnostics.empty() ? "" : r.diagnostics.front().message;
}

}  // namespace

TEST(ParseTest, DiceFileMatchesBuiltStructure) {
  const auto r = parse(assets::kDice);
  ASSERT_TRUE(r.ok()) << r.diagnostics.front().to_string();
  ASSERT_EQ(1u, r.structures.size());
  EXPECT_EQ(fixtures::dice(), r.structures.front());
  EXPECT_TRUE(validate(r.structures.front()).empty());
}

TEST(ParseTest, MinimalStructure) {
  const auto r = parse("structure s { level 1 { rel R; } }");
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(1u, r.structures.size());
  const Structure& s = r.structures.front();
  EXPECT_EQ("s", s.name);
  ASSERT_EQ(1u, s.depth());
  EXPECT_TRUE(s.at("R").is_relationship());
}

TEST(ParseTest, MissingFirstLevel) {
  const std::string source = "structure s { level 2 { rel R; } }";
  const auto r = parse(source);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ("level 1 missing", r.diagnostics.front().message);
  EXPECT_EQ("level 2", spanned(source, r.diagnostics.front().span));

  // The equivalent hand-built structure fails validation as well.
  Structure hand;
  hand.name = "s";
  hand.levels.resize(2);
  hand.levels[1].members.push_back(Element{"R", ElementKind::Relationship, 2, std::nullopt});
  EXPECT_FALSE(validate(hand).empty());
}

TEST(ParseTest, LevelOrder) {
  EXPECT_EQ("level 2 missing", first_error("structure s { level 1 { rel R; } level 3 { rel Q of R; } }"));
  EXPECT_EQ("level 1 declared out of order (expected level 2)",
            first_error("structure s { level 1 { rel R; } level 1 { rel Q; } }"));
}

TEST(ParseTest, AllAssetsParse) {
  for (const auto& [name, text] : assets::kAll) {
    const auto r = parse(text);
    EXPECT_TRUE(r.ok()) << name << ": " << (r.diagnostics.empty() ? "" : r.diagnostics.front().to_string());
  }
  EXPECT_EQ(2u, parse(assets::kBertrand).structures.size());
}

TEST(ParseTest, AttributesAndComments) {
  const auto r = parse(R"(
# leading comment
structure s {   # trailing comment
  level 1 { entity a [in]; entity b [out]; rel R; }
  level 2 {
    rel X of R [alt=g, p=0.25, opaque];
    rel Y of R [alt=g, p=3/4];
  }
  denote b => R;
}
structure t { level 1 { rel Q; } }
)");
  ASSERT_TRUE(r.ok()) << r.diagnostics.front().to_string();
  ASSERT_EQ(2u, r.structures.size());
  const Structure& s = r.structures[0];
  EXPECT_EQ(Role::Input, s.at("a").role);
  EXPECT_EQ(Role::Output, s.at("b").role);
  EXPECT_TRUE(s.at("X").opaque);
  EXPECT_EQ("g", *s.at("X").alt_group);
  EXPECT_EQ(Probability(1, 4), *s.at("X").probability);
  EXPECT_EQ(Probability(3, 4), *s.at("Y").probability);
  EXPECT_EQ("R", *s.at("Y").parent);
  ASSERT_EQ(1u, s.denotations.size());
  EXPECT_EQ("t", r.structures[1].name);
}

TEST(ParseTest, SyntaxErrorsCarrySpans) {
  struct Case {
    std::string source;
    std::string at;
  };
  for (const Case& c : std::vector<Case>{
           {"structure s { level 1 { rel R } }", "}"},
           {"structure s { level 1 { rel R [fuzzy]; } }", "fuzzy"},
           {"structure s { level 1 { rel rel; } }", "rel"},
           {"structure { level 1 { rel R; } }", "{"},
           {"structure s { level 1 { } }", "}"},
           {"structure s { }", "}"},
           {"structure s { level 1 { rel R @; } }", "@"},
           {"structure s { level x { rel R; } }", "x"},
           {"structure s { level 1 { rel R [p=]; } }", "]"},
           {"structure s { level 1 { rel R; } denote a -> R; }", "-"},
           {"\n\n  bogus", "bogus"},
       }) {
    const auto r = parse(c.source);
    ASSERT_FALSE(r.ok()) << c.source;
    EXPECT_EQ(c.at, spanned(c.source, r.diagnostics.front().span)) << c.source;
  }
}

TEST(ParseTest, EmptyInputIsAnError) {
  const auto r = parse("");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(1u, r.diagnostics.front().span.line);
  EXPECT_EQ(1u, r.diagnostics.front().span.column);
}

TEST(ParseTest, SemanticDiagnostics) {
  const std::string source =
      "structure s {\n"
      "  level 1 { rel R; entity E [out]; }\n"
      "  level 2 { rel A of R [alt=g, p=0.7]; rel B of R [alt=g, p=0.7]; rel C of Q; }\n"
      "  denote E => Z;\n"
      "}\n";
  const auto r = parse(source);
  ASSERT_FALSE(r.ok());
  std::vector<std::string> covered;
  for (const auto& d : r.diagnostics) covered.push_back(spanned(source, d.span));
  EXPECT_NE(std::find(covered.begin(), covered.end(), "C"), covered.end());  // unknown parent
  EXPECT_NE(std::find(covered.begin(), covered.end(), "denote E => Z;"), covered.end());
  EXPECT_EQ(3u, r.diagnostics.size());
}

TEST(ParseTest, BadProbabilities) {
  EXPECT_EQ("probability 3/2 is not a number in [0, 1]", first_error("structure s { level 1 { rel R [p=3/2]; } }"));
  EXPECT_EQ("probability 1/0 is not a number in [0, 1]", first_error("structure s { level 1 { rel R [p=1/0]; } }"));
  EXPECT_EQ("probability 1.5 is not a number in [0, 1]", first_error("structure s { level 1 { rel R [p=1.5]; } }"));
  EXPECT_EQ("duplicate role attribute on 'E'", first_error("structure s { level 1 { rel R; entity E [in, out]; } }"));
  EXPECT_EQ("entity 'E' carries a relationship-only attribute (opaque, alt or p)",
            first_error("structure s { level 1 { rel R; entity E [opaque]; } }"));
}

TEST(ParseTest, DuplicateIdsAcrossStructuresAreIndependent) {
  EXPECT_TRUE(parse("structure a { level 1 { rel R; } } structure b { level 1 { rel R; } }").ok());
  EXPECT_EQ("'R' is declared more than once", first_error("structure a { level 1 { rel R; entity R; } }"));
}

TEST(SerializeTest, CanonicalText) {
  const std::string text = serialize(fixtures::coin());
  EXPECT_EQ(
      "structure coin {\n"
      "  level 1 {\n"
      "    entity coin_up [in];\n"
      "    entity heads [out];\n"
      "    rel comes_down;\n"
      "  }\n"
      "  level 2 {\n"
      "    rel R_h of comes_down [alt=comes_down, p=1/2];\n"
      "    rel not_R_h of comes_down [alt=comes_down, p=1/2];\n"
      "    entity not_heads of comes_down [out];\n"
      "  }\n"
      "  denote heads => R_h;\n"
      "  denote not_heads => not_R_h;\n"
      "}\n",
      text);
}

TEST(SerializeTest, FractionsStayExact) {
  const std::string text = serialize(fixtures::dice());
  EXPECT_NE(text.find("p=1/6"), std::string::npos);
  EXPECT_EQ(text.find("0.1666"), std::string::npos);
  Structure s = fixtures::decision();
  s = assign_probability(s, "decide", *Probability::parse("0.25"));
  EXPECT_NE(serialize(s).find("p=1/4"), std::string::npos);
}

TEST(SerializeTest, RoundTripFixpoint) {
  for (const auto& [name, text] : assets::kAll) {
    const auto first = dsl::parse_or_throw(text);
    const std::string once = serialize(first);
    const auto second = dsl::parse_or_throw(once);
    EXPECT_EQ(first, second) << name;
    EXPECT_EQ(once, serialize(second)) << name;
  }
}

TEST(SerializeTest, InvalidStructureIsRejected) {
  Structure s = fixtures::dice();
  s.levels[1].members[0].parent = "ghost";
  try {
    serialize(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(ErrorCode::InvalidStructure, e.code());
  }
}
