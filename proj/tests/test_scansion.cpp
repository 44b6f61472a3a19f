// Copyright 2026 The Halo Authors.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "halo/rng.hpp"
#include "halo/scansion.hpp"
#include "oracles.hpp"

using namespace halo;
using namespace halo::scansion;

namespace {

corpus::Poem poem_of(const std::vector<std::string>& stresses) {
  corpus::Poem p;
  p.id = "p";
  for (const auto& s : stresses) p.lines.push_back({s, {}});
  return p;
}

std::string label_of(const std::vector<std::string>& stresses) {
  const auto templates = default_templates();
  const auto r = label_poem(poem_of(stresses), templates);
  return r.label ? r.label->code : "";
}

}  // namespace

TEST_CASE("templates") {
  const MeterTemplate i5(FootKind::kIamb, 5);
  CHECK(i5.strong_offsets() == std::vector<int>{2, 4, 6, 8, 10});
  CHECK(i5.anchor_length() == 10);
  CHECK(i5.max_length() == 12);
  CHECK(i5.code() == "I5");
  const MeterTemplate an2(FootKind::kAnapest, 2);
  CHECK(an2.strong_offsets() == std::vector<int>{3, 6});
  CHECK(an2.code() == "An2");
  CHECK(parse_code("An2") == an2);
  CHECK(parse_code("A4") == MeterTemplate(FootKind::kAmphibrach, 4));
  CHECK_FALSE(parse_code("Q3").has_value());
  CHECK_FALSE(parse_code("I").has_value());
  CHECK(default_templates().size() == 7 * 2 + 5 * 3);
}

TEST_CASE("line matching examples") {
  CHECK(line_matches("0101010101", MeterTemplate(FootKind::kIamb, 5)));
  CHECK(line_matches("1010101", MeterTemplate(FootKind::kTrochee, 4)));
  CHECK(line_matches("0001000100", MeterTemplate(FootKind::kIamb, 5)));
  CHECK_FALSE(line_matches("1101010101", MeterTemplate(FootKind::kIamb, 5)));
  // Tail of at most two unstressed syllables.
  CHECK(line_matches("010101010100", MeterTemplate(FootKind::kIamb, 5)));
  CHECK_FALSE(line_matches("0101010101000", MeterTemplate(FootKind::kIamb, 5)));
  CHECK_FALSE(line_matches("010101010", MeterTemplate(FootKind::kIamb, 5)));
}

TEST_CASE("property: line_matches agrees with the generating enumerator") {
  const auto templates = default_templates();
  const testing::TemplateEnumerator oracle(templates, 12);
  for (int len = 1; len <= 12; ++len) {
    for (unsigned bits = 0; bits < (1u << len); ++bits) {
      std::string s(static_cast<std::size_t>(len), '0');
      for (int i = 0; i < len; ++i) {
        if (bits >> i & 1u) s[static_cast<std::size_t>(i)] = '1';
      }
      const auto want = oracle.matching(s);
      for (std::size_t t = 0; t < templates.size(); ++t) {
        if (templates[t].feet() > 5) continue;
        const bool expected = std::find(want.begin(), want.end(), t) != want.end();
        if (line_matches(s, templates[t]) != expected) {
          FAIL_CHECK(s << " vs " << templates[t].code());
        }
      }
    }
  }
}

TEST_CASE("poem labels") {
  std::vector<std::string> eight_of_ten(8, "01010101");
  eight_of_ten.insert(eight_of_ten.end(), 2, "11");
  CHECK(label_of(eight_of_ten) == "I4");

  std::vector<std::string> seven_of_ten(7, "01010101");
  seven_of_ten.insert(seven_of_ten.end(), 3, "11");
  CHECK(label_of(seven_of_ten).empty());
  const auto templates = default_templates();
  CHECK(label_poem(poem_of(seven_of_ten), templates).best_fraction == doctest::Approx(0.7));

  // Stressless 8-syllable lines fit I4 and T4 (and shorter trochees); the
  // iamb comes first and, within it, the longer template.
  CHECK(label_of(std::vector<std::string>(4, "00000000")) == "I4");
  CHECK(label_of({"0101010101", "0101010101"}) == "I5");
  CHECK(label_of({"10010010010"}) == "D4");
  CHECK(label_of({"01001001001"}) == "A4");
  CHECK(label_of({"0010010"}) == "An2");
  const auto r = label_poem(poem_of({"0101010101"}), templates);
  REQUIRE(r.label);
  CHECK(r.label->foot == FootKind::kIamb);
  CHECK(r.label->feet == 5);
  CHECK(r.label->match_fraction == 1.0);
}

TEST_CASE("property: random poems label like the exhaustive oracle") {
  const auto templates = default_templates();
  const testing::TemplateEnumerator oracle(templates, 12);
  Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    std::vector<std::string> lines;
    for (std::size_t n = 1 + rng.below(12); n > 0; --n) lines.push_back(oracle.random_line(rng));
    CHECK(label_of(lines) == oracle.label(lines));
  }
}

TEST_CASE("clausulas") {
  CHECK(clausula("01010101") == 'm');
  CHECK(clausula("010101010") == 'f');
  CHECK(clausula("0101010100") == 'd');
  CHECK(clausula("10000") == 'd');
  CHECK(clausula("000000") == 'x');
  CHECK(clausula_sequence(poem_of({"01", "010", "000"})) == "mfx");
}

TEST_CASE("minimal period") {
  CHECK(minimal_period("fmfmmmfmfmmm") == "fmfmmm");
  CHECK(minimal_period("mmmm") == "m");
  CHECK(minimal_period("mfd") == "mfd");
  CHECK(minimal_period("mfmfm") == "mf");
  CHECK(minimal_period("") == "");
}

TEST_CASE("property: minimal period reproduces the sequence and nothing shorter does") {
  Rng rng(3);
  for (int trial = 0; trial < 3000; ++trial) {
    std::string s;
    if (rng.below(2)) {
      std::string unit;
      for (std::size_t n = 1 + rng.below(4); n > 0; --n) unit += "mfdx"[rng.below(4)];
      for (std::size_t r = 1 + rng.below(4); r > 0; --r) s += unit;
      s.resize(s.size() - rng.below(std::min<std::size_t>(unit.size(), s.size())));
    } else {
      for (std::size_t n = rng.below(12); n > 0; --n) s += "mf"[rng.below(2)];
    }
    const auto p = minimal_period(s);
    bool reproduces = true;
    for (std::size_t i = 0; i < s.size(); ++i) reproduces = reproduces && s[i] == p[i % p.size()];
    CHECK((p == s || (reproduces && p.size() <= s.size() / 2)));
    for (std::size_t q = 1; q < p.size() && q <= s.size() / 2; ++q) {
      bool periodic = true;
      for (std::size_t i = q; i < s.size(); ++i) periodic = periodic && s[i] == s[i % q];
      CHECK_FALSE(periodic);
    }
  }
}

TEST_CASE("form codes") {
  // Six lines of the classic trochaic stanza: five octameters and a tetrameter.
  auto raven = poem_of({"1010101010101010", "101010101010101", "1010101010101010", "101010101010101",
                        "101010101010101", "1010101"});
  raven.rhyme = std::vector<std::string>{"A", "B", "C", "B", "B", "B"};
  const auto templates = default_templates();
  const auto label = label_poem(raven, templates).label;
  REQUIRE(label);
  CHECK(label->code == "T8");
  CHECK(form_code(raven, *label).to_string() == "Trochee-888884-ABCBBB-fmfmmm");

  const auto i5 = poem_of(std::vector<std::string>(6, "0101010101"));
  const auto l5 = label_poem(i5, templates).label;
  REQUIRE(l5);
  CHECK(form_code(i5, *l5).to_string() == "Iamb-5-m");

  const auto ballad = poem_of({"01010101", "010101", "01010101", "010101"});
  const MeterLabel i4{"I4", FootKind::kIamb, 4, 0.5};
  const auto fc = form_code(ballad, i4);
  CHECK(fc.to_string() == "Iamb-43-m");
  CHECK(fc.unmatched_lines.empty());

  const auto broken = poem_of({"01010101", "1111"});
  const auto fb = form_code(broken, i4);
  CHECK(fb.to_string() == "Iamb-4?-m");
  CHECK(fb.unmatched_lines == std::vector<std::size_t>{1});
}

TEST_CASE("label CSV") {
  corpus::Corpus c;
  c.poems = {poem_of({"01010101"}), poem_of({"11"})};
  c.poems[0].id = "a,b";
  c.poems[1].id = "z";
  const auto templates = default_templates();
  const auto rows = label_corpus(c, templates);
  std::ostringstream out;
  write_label_csv(out, rows);
  CHECK(out.str() ==
        "poem_id,label,match_fraction,form_code\n"
        "\"a,b\",I4,1.000000,Iamb-4-m\n"
        "z,,0.000000,\n");
}
