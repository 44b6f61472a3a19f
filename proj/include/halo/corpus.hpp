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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace halo::corpus {

struct Token {
  std::string lemma;
  std::string pos;  // conventionally NOUN, ADJ, VERB, OTHER
  std::optional<std::string> surface;

  bool operator==(const Token&) const = default;
};

// Stress string over {'0','1'}; 1 marks a stressed syllable.
struct AnnotatedLine {
  std::string stress;
  std::vector<Token> tokens;

  bool operator==(const AnnotatedLine&) const = default;
};

struct Poem {
  std::string id;
  std::optional<std::string> author;
  std::optional<int> year;
  std::vector<AnnotatedLine> lines;
  std::optional<std::vector<std::string>> rhyme;  // one letter per line

  std::size_t token_count() const;
  bool operator==(const Poem&) const = default;
};

struct Provenance {
  std::string source;
  std::string loaded_at;      // ISO-8601 UTC
  std::string config_digest;  // digest of the settings that produced this corpus
};

struct Corpus {
  std::vector<Poem> poems;
  Provenance provenance;

  std::size_t size() const { return poems.size(); }
};

// Throws DataError naming the poem (and field) when an invariant fails.
void validate(const Poem& poem);

// Parses one JSON Lines record. `line_number` is used in error messages.
Poem parse_record(const std::string& json_line, std::size_t line_number,
                  std::vector<std::string>* warnings = nullptr);

std::string to_record(const Poem& poem);

Corpus read_corpus(std::istream& in, const std::string& source_name,
                   std::vector<std::string>* warnings = nullptr);
Corpus load_corpus(const std::string& path,
                   std::vector<std::string>* warnings = nullptr);

void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::string& path, const Corpus& corpus);

inline constexpr std::size_t kDefaultMinTokens = 20;
inline constexpr std::size_t kDefaultMaxTokens = 2000;

Corpus filter_by_size(const Corpus& corpus, std::size_t min_tokens,
                      std::size_t max_tokens);

struct PeriodSplit {
  Corpus early;  // year < boundary
  Corpus late;   // year >= boundary
  std::size_t undated = 0;
};

PeriodSplit split_by_period(const Corpus& corpus, int boundary_year);

}  // namespace halo::corpus
