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

#include "halo/scansion.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>

#include "halo/csv.hpp"
#include "halo/error.hpp"

namespace halo::scansion {

std::string_view foot_pattern(FootKind kind) {
  switch (kind) {
    case FootKind::kIamb: return "WS";
    case FootKind::kTrochee: return "SW";
    case FootKind::kDactyl: return "SWW";
    case FootKind::kAmphibrach: return "WSW";
    case FootKind::kAnapest: return "WWS";
  }
  return "";
}

std::string_view foot_name(FootKind kind) {
  switch (kind) {
    case FootKind::kIamb: return "Iamb";
    case FootKind::kTrochee: return "Trochee";
    case FootKind::kDactyl: return "Dactyl";
    case FootKind::kAmphibrach: return "Amphibrach";
    case FootKind::kAnapest: return "Anapest";
  }
  return "";
}

std::string_view foot_code(FootKind kind) {
  switch (kind) {
    case FootKind::kIamb: return "I";
    case FootKind::kTrochee: return "T";
    case FootKind::kDactyl: return "D";
    case FootKind::kAmphibrach: return "A";
    case FootKind::kAnapest: return "An";
  }
  return "";
}

bool is_binary(FootKind kind) { return foot_pattern(kind).size() == 2; }

MeterTemplate::MeterTemplate(FootKind foot, int feet) : foot_(foot), feet_(feet) {
  if (feet < 1) throw DataError(fmt::format("meter template needs at least one foot, got {}", feet));
  const auto pat = foot_pattern(foot);
  const int strong_in_foot = static_cast<int>(pat.find('S')) + 1;
  const int len = static_cast<int>(pat.size());
  strong_.reserve(static_cast<std::size_t>(feet));
  for (int f = 0; f < feet; ++f) strong_.push_back(f * len + strong_in_foot);
}

std::string MeterTemplate::code() const { return fmt::format("{}{}", foot_code(foot_), feet_); }

std::optional<MeterTemplate> parse_code(std::string_view code) {
  // "An" must be tried before "A".
  static constexpr FootKind order[] = {FootKind::kAnapest, FootKind::kIamb, FootKind::kTrochee,
                                       FootKind::kDactyl, FootKind::kAmphibrach};
  for (FootKind k : order) {
    const auto prefix = foot_code(k);
    if (code.size() > prefix.size() && code.substr(0, prefix.size()) == prefix) {
      const auto digits = code.substr(prefix.size());
      if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return std::nullopt;
      }
      const int feet = std::stoi(std::string(digits));
      if (feet < 1) return std::nullopt;
      return MeterTemplate(k, feet);
    }
  }
  return std::nullopt;
}

std::vector<MeterTemplate> default_templates() {
  std::vector<MeterTemplate> out;
  for (FootKind k : kAllFeet) {
    const int max_feet = is_binary(k) ? 8 : 6;
    for (int n = 2; n <= max_feet; ++n) out.emplace_back(k, n);
  }
  return out;
}

bool line_matches(std::string_view stress, const MeterTemplate& tmpl) {
  const int len = static_cast<int>(stress.size());
  if (len < tmpl.anchor_length() || len > tmpl.max_length()) return false;
  const auto& strong = tmpl.strong_offsets();
  std::size_t next = 0;
  for (int pos = 1; pos <= len; ++pos) {
    const bool is_strong = next < strong.size() && strong[next] == pos;
    if (is_strong) {
      ++next;
    } else if (stress[static_cast<std::size_t>(pos - 1)] == '1') {
      return false;
    }
  }
  return true;
}

namespace {

// True when a should win a tie against b.
bool precedes(const MeterTemplate& a, const MeterTemplate& b) {
  if (a.foot() != b.foot()) return static_cast<int>(a.foot()) < static_cast<int>(b.foot());
  return a.feet() > b.feet();
}

}  // namespace

LabelResult label_poem(const corpus::Poem& poem, std::span<const MeterTemplate> templates,
                       double threshold) {
  if (templates.empty()) throw DataError("label_poem: empty template list");
  LabelResult result;
  const std::size_t n = poem.lines.size();
  if (n == 0) return result;

  const MeterTemplate* best = nullptr;
  std::size_t best_hits = 0;
  for (const auto& t : templates) {
    std::size_t hits = 0;
    for (const auto& line : poem.lines) hits += line_matches(line.stress, t) ? 1 : 0;
    if (!best || hits > best_hits || (hits == best_hits && precedes(t, *best))) {
      best = &t;
      best_hits = hits;
    }
  }
  result.best_fraction = static_cast<double>(best_hits) / static_cast<double>(n);
  // Compare on counts so 8 of 10 lines meets a 0.8 threshold exactly.
  if (static_cast<double>(best_hits) >= threshold * static_cast<double>(n) - 1e-9) {
    result.label = MeterLabel{best->code(), best->foot(), best->feet(), result.best_fraction};
  }
  return result;
}

char clausula(std::string_view stress) {
  const auto last = stress.rfind('1');
  if (last == std::string_view::npos) return 'x';
  const auto tail = stress.size() - 1 - last;
  if (tail == 0) return 'm';
  if (tail == 1) return 'f';
  return 'd';
}

std::string clausula_sequence(const corpus::Poem& poem) {
  std::string out;
  out.reserve(poem.lines.size());
  for (const auto& line : poem.lines) out.push_back(clausula(line.stress));
  return out;
}

std::string minimal_period(std::string_view seq) {
  const auto p = minimal_period(std::span<const char>(seq.data(), seq.size()));
  return {p.begin(), p.end()};
}

std::string FormCode::to_string() const {
  std::string out = meter + "-";
  for (const auto& f : feet) out += f;
  if (!rhyme.empty()) {
    out += "-";
    for (const auto& r : rhyme) out += r;
  }
  out += "-" + clausulas;
  return out;
}

FormCode form_code(const corpus::Poem& poem, const MeterLabel& label) {
  FormCode fc;
  fc.meter = std::string(foot_name(label.foot));
  const auto pat_len = static_cast<int>(foot_pattern(label.foot).size());

  std::vector<std::string> counts;
  counts.reserve(poem.lines.size());
  for (std::size_t i = 0; i < poem.lines.size(); ++i) {
    const auto& stress = poem.lines[i].stress;
    // Any matching n has anchor_length <= |stress|, which bounds n.
    const int upper = static_cast<int>(stress.size()) / pat_len + 1;
    int found = 0;
    for (int n = upper; n >= 1 && !found; --n) {
      if (line_matches(stress, MeterTemplate(label.foot, n))) found = n;
    }
    if (found) {
      counts.push_back(std::to_string(found));
    } else {
      counts.emplace_back("?");
      fc.unmatched_lines.push_back(i);
    }
  }
  fc.feet = minimal_period(std::span<const std::string>(counts));
  if (poem.rhyme) fc.rhyme = minimal_period(std::span<const std::string>(*poem.rhyme));
  fc.clausulas = minimal_period(clausula_sequence(poem));
  return fc;
}

std::vector<LabelRow> label_corpus(const corpus::Corpus& corpus,
                                   std::span<const MeterTemplate> templates, double threshold) {
  std::vector<LabelRow> rows;
  rows.reserve(corpus.poems.size());
  for (const auto& poem : corpus.poems) {
    LabelRow row;
    row.poem_id = poem.id;
    auto res = label_poem(poem, templates, threshold);
    row.match_fraction = res.best_fraction;
    if (res.label) {
      row.form_code = form_code(poem, *res.label).to_string();
      row.label = std::move(res.label);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_label_csv(std::ostream& out, std::span<const LabelRow> rows) {
  out << "poem_id,label,match_fraction,form_code\n";
  for (const auto& r : rows) {
    out << csv::escape(r.poem_id) << ',' << (r.label ? r.label->code : "") << ','
        << fmt::format("{:.6f}", r.match_fraction) << ',' << r.form_code << '\n';
  }
}

}  // namespace halo::scansion
