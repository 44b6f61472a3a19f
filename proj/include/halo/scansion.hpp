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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "halo/corpus.hpp"

namespace halo::scansion {

// Declaration order is the tie-break order used by label_poem.
enum class FootKind { kIamb = 0, kTrochee, kDactyl, kAmphibrach, kAnapest };

inline constexpr FootKind kAllFeet[] = {FootKind::kIamb, FootKind::kTrochee, FootKind::kDactyl,
                                        FootKind::kAmphibrach, FootKind::kAnapest};

// Strong/weak pattern of one foot, e.g. "WS" for the iamb.
std::string_view foot_pattern(FootKind kind);
// "Iamb", "Trochee", ...
std::string_view foot_name(FootKind kind);
// Label prefix: "I", "T", "D", "A", "An".
std::string_view foot_code(FootKind kind);
bool is_binary(FootKind kind);

class MeterTemplate {
 public:
  MeterTemplate(FootKind foot, int feet);

  FootKind foot() const { return foot_; }
  int feet() const { return feet_; }
  // 1-based syllable positions of each foot's strong slot.
  const std::vector<int>& strong_offsets() const { return strong_; }
  // Position of the last strong slot; shortest admissible line length.
  int anchor_length() const { return strong_.back(); }
  // Longest admissible line length (anchor plus up to two unstressed syllables).
  int max_length() const { return anchor_length() + kMaxTail; }
  std::string code() const;

  bool operator==(const MeterTemplate& o) const { return foot_ == o.foot_ && feet_ == o.feet_; }

  static constexpr int kMaxTail = 2;

 private:
  FootKind foot_;
  int feet_;
  std::vector<int> strong_;
};

// Parses a label code such as "I5" or "An2".
std::optional<MeterTemplate> parse_code(std::string_view code);

// Feet 2-8 for binary feet, 2-6 for ternary feet.
std::vector<MeterTemplate> default_templates();

bool line_matches(std::string_view stress, const MeterTemplate& tmpl);

struct MeterLabel {
  std::string code;
  FootKind foot;
  int feet;
  double match_fraction;
};

inline constexpr double kDefaultThreshold = 0.8;

struct LabelResult {
  std::optional<MeterLabel> label;
  double best_fraction = 0.0;  // reported even when unlabeled
};

// Picks the template with the largest share of matching lines. Ties go to
// the earlier foot kind, then to the template with more feet.
LabelResult label_poem(const corpus::Poem& poem, std::span<const MeterTemplate> templates,
                       double threshold = kDefaultThreshold);

// Per-line ending: 'm' masculine, 'f' feminine, 'd' dactylic, 'x' stressless.
char clausula(std::string_view stress);
std::string clausula_sequence(const corpus::Poem& poem);

// Shortest prefix p (|p| <= |seq|/2) whose periodic extension reproduces seq,
// otherwise seq itself.
template <class T>
std::vector<T> minimal_period(std::span<const T> seq) {
  const std::size_t n = seq.size();
  for (std::size_t p = 1; p <= n / 2; ++p) {
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = seq[i] == seq[i % p];
    if (ok) return {seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(p)};
  }
  return {seq.begin(), seq.end()};
}

std::string minimal_period(std::string_view seq);

struct FormCode {
  std::string meter;                 // "Trochee"
  std::vector<std::string> feet;     // per-position foot counts in one period; "?" if unmatched
  std::vector<std::string> rhyme;    // empty when not annotated
  std::string clausulas;             // period of the clausula sequence
  std::vector<std::size_t> unmatched_lines;  // 0-based lines matching no foot count

  std::string to_string() const;
};

// Foot counts come from the largest n with line_matches(line, (foot, n)).
FormCode form_code(const corpus::Poem& poem, const MeterLabel& label);

struct LabelRow {
  std::string poem_id;
  std::optional<MeterLabel> label;
  double match_fraction = 0.0;
  std::string form_code;  // empty when unlabeled
};

std::vector<LabelRow> label_corpus(const corpus::Corpus& corpus,
                                   std::span<const MeterTemplate> templates,
                                   double threshold = kDefaultThreshold);

// CSV: poem_id,label,match_fraction,form_code
void write_label_csv(std::ostream& out, std::span<const LabelRow> rows);

}  // namespace halo::scansion
