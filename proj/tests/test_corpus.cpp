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
#include <string>

#include <fmt/format.h>

#include "halo/corpus.hpp"
#include "halo/error.hpp"
#include "halo/rng.hpp"

using namespace halo;
using namespace halo::corpus;

namespace {

std::string record(const std::string& id, const std::string& stress, int tokens, const std::string& extra = "") {
  std::string toks;
  for (int i = 0; i < tokens; ++i) {
    toks += fmt::format(R"({}{{"lemma":"w{}","pos":"NOUN"}})", i ? "," : "", i);
  }
  return fmt::format(R"({{"id":"{}"{},"lines":[{{"stress":"{}","tokens":[{}]}}]}})", id, extra, stress, toks);
}

Corpus parse(const std::string& text, std::vector<std::string>* warnings = nullptr) {
  std::istringstream in(text);
  return read_corpus(in, "mem", warnings);
}

Poem sized(const std::string& id, std::size_t tokens, std::optional<int> year = std::nullopt) {
  Poem p;
  p.id = id;
  p.year = year;
  AnnotatedLine l{"0101", {}};
  for (std::size_t i = 0; i < tokens; ++i) l.tokens.push_back({"x", "NOUN", std::nullopt});
  p.lines.push_back(l);
  return p;
}

}  // namespace

TEST_CASE("three valid records load as three poems") {
  const auto c = parse(record("a", "0101", 2) + "\n" + record("b", "10", 1) + "\n\n" + record("c", "1", 0) + "\n");
  CHECK(c.size() == 3);
  CHECK(c.poems[1].id == "b");
  CHECK(c.poems[0].token_count() == 2);
  CHECK(c.provenance.source == "mem");
}

TEST_CASE("stress outside {0,1} names the poem") {
  try {
    parse(record("ok", "01", 1) + "\n" + record("bad-poem", "01021", 1) + "\n");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bad-poem") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
  }
}

TEST_CASE("missing year loads as absent, explicit year is kept") {
  const auto c = parse(record("a", "01", 1) + "\n" + record("b", "01", 1, R"(,"year":1844,"author":"X")") + "\n");
  CHECK_FALSE(c.poems[0].year.has_value());
  CHECK(c.poems[1].year == 1844);
  CHECK(c.poems[1].author == "X");
}

TEST_CASE("structural errors") {
  CHECK_THROWS_AS(parse("{not json}\n"), DataError);
  CHECK_THROWS_AS(parse(R"({"lines":[]})" "\n"), DataError);
  CHECK_THROWS_AS(parse(R"({"id":"a","lines":[]})" "\n"), DataError);
  CHECK_THROWS_AS(parse(record("a", "01", 1) + "\n" + record("a", "10", 1) + "\n"), DataError);
  CHECK_THROWS_AS(parse(R"({"id":"a","lines":[{"stress":"01"}],"rhyme":["A","B"]})" "\n"), DataError);
  CHECK_THROWS_AS(parse(R"({"id":"a","year":"1850","lines":[{"stress":"01"}]})" "\n"), DataError);
  CHECK_THROWS_AS(parse(R"({"id":"a","lines":[{"stress":"01","tokens":[{"lemma":" ","pos":"NOUN"}]}]})" "\n"),
                  DataError);
}

TEST_CASE("unknown fields warn but load") {
  std::vector<std::string> warnings;
  const auto c = parse(record("a", "01", 1, R"(,"genre":"ode")") + "\n", &warnings);
  CHECK(c.size() == 1);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("genre") != std::string::npos);
}

TEST_CASE("size filter bounds are inclusive") {
  Corpus c;
  c.poems = {sized("small", 10), sized("mid", 100), sized("edge", 20)};
  const auto f = filter_by_size(c, 20, 2000);
  REQUIRE(f.size() == 2);
  CHECK(f.poems[0].id == "mid");
  CHECK(f.poems[1].id == "edge");
  Corpus one;
  one.poems = {sized("n", 7)};
  CHECK(filter_by_size(one, 7, 7).size() == 1);
  CHECK_THROWS_AS(filter_by_size(one, 8, 7), DataError);
  CHECK(f.provenance.config_digest.find("size[20,2000]") != std::string::npos);
}

TEST_CASE("period split") {
  Corpus c;
  c.poems = {sized("a", 1, 1859), sized("b", 1, 1860), sized("c", 1), sized("d", 1, 1919)};
  const auto s = split_by_period(c, 1860);
  REQUIRE(s.early.size() == 1);
  CHECK(s.early.poems[0].id == "a");
  REQUIRE(s.late.size() == 2);
  CHECK(s.late.poems[0].id == "b");
  CHECK(s.undated == 1);
}

TEST_CASE("property: serialize then load round-trips") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    Corpus c;
    const std::size_t poems = 1 + rng.below(6);
    for (std::size_t p = 0; p < poems; ++p) {
      Poem poem;
      poem.id = fmt::format("p{}-\"q\"\\{}", trial, p);
      if (rng.below(2)) poem.year = 1800 + static_cast<int>(rng.below(120));
      if (rng.below(2)) poem.author = "Ано́нім";
      const std::size_t lines = 1 + rng.below(5);
      for (std::size_t l = 0; l < lines; ++l) {
        AnnotatedLine line;
        const std::size_t syl = 1 + rng.below(12);
        for (std::size_t s = 0; s < syl; ++s) line.stress += rng.below(2) ? '1' : '0';
        for (std::size_t t = rng.below(4); t > 0; --t) {
          Token tok{fmt::format("l{}", rng.below(50)), rng.below(2) ? "NOUN" : "VERB", std::nullopt};
          if (rng.below(2)) tok.surface = "Ü";
          line.tokens.push_back(tok);
        }
        poem.lines.push_back(line);
      }
      if (rng.below(2)) poem.rhyme = std::vector<std::string>(lines, "A");
      c.poems.push_back(poem);
    }
    std::ostringstream out;
    write_corpus(out, c);
    const auto back = parse(out.str());
    REQUIRE(back.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(back.poems[i] == c.poems[i]);
  }
}
