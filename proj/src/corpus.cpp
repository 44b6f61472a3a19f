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

#include "halo/corpus.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <fmt/format.h>
#include "json.hpp"

#include "halo/error.hpp"

namespace halo::corpus {

using nlohmann::json;

std::size_t Poem::token_count() const {
  std::size_t n = 0;
  for (const auto& line : lines) n += line.tokens.size();
  return n;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

[[noreturn]] void fail(std::size_t line_number, const std::string& id,
                       const std::string& what) {
  if (id.empty()) {
    throw DataError(fmt::format("line {}: {}", line_number, what));
  }
  throw DataError(fmt::format("line {}: poem '{}': {}", line_number, id, what));
}

}  // namespace

void validate(const Poem& poem) {
  if (poem.id.empty()) throw DataError("poem with empty id");
  if (poem.lines.empty()) {
    throw DataError(fmt::format("poem '{}': no lines", poem.id));
  }
  for (std::size_t i = 0; i < poem.lines.size(); ++i) {
    const auto& line = poem.lines[i];
    if (line.stress.empty()) {
      throw DataError(fmt::format("poem '{}': line {} has empty stress", poem.id, i + 1));
    }
    for (char c : line.stress) {
      if (c != '0' && c != '1') {
        throw DataError(fmt::format("poem '{}': line {} stress '{}' has symbol '{}' outside {{0,1}}",
                                    poem.id, i + 1, line.stress, c));
      }
    }
    for (const auto& tok : line.tokens) {
      if (trim(tok.lemma).empty()) {
        throw DataError(fmt::format("poem '{}': line {} has a token with empty lemma",
                                    poem.id, i + 1));
      }
    }
  }
  if (poem.rhyme && poem.rhyme->size() != poem.lines.size()) {
    throw DataError(fmt::format("poem '{}': {} rhyme letters for {} lines", poem.id,
                                poem.rhyme->size(), poem.lines.size()));
  }
}

Poem parse_record(const std::string& json_line, std::size_t line_number,
                  std::vector<std::string>* warnings) {
  json j;
  try {
    j = json::parse(json_line);
  } catch (const json::parse_error& e) {
    fail(line_number, "", fmt::format("malformed JSON: {}", e.what()));
  }
  if (!j.is_object()) fail(line_number, "", "record is not a JSON object");

  Poem p;
  if (!j.contains("id") || !j["id"].is_string()) fail(line_number, "", "missing string field 'id'");
  p.id = j["id"].get<std::string>();

  static const std::unordered_set<std::string> known = {"id", "author", "year", "lines", "rhyme"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key) && warnings) {
      warnings->push_back(fmt::format("line {}: poem '{}': unknown field '{}' ignored",
                                      line_number, p.id, key));
    }
  }

  if (j.contains("author") && !j["author"].is_null()) {
    if (!j["author"].is_string()) fail(line_number, p.id, "'author' must be string or null");
    p.author = j["author"].get<std::string>();
  }
  if (j.contains("year") && !j["year"].is_null()) {
    if (!j["year"].is_number_integer()) fail(line_number, p.id, "'year' must be integer or null");
    p.year = j["year"].get<int>();
  }
  if (!j.contains("lines") || !j["lines"].is_array()) {
    fail(line_number, p.id, "missing array field 'lines'");
  }
  for (const auto& jl : j["lines"]) {
    if (!jl.is_object() || !jl.contains("stress") || !jl["stress"].is_string()) {
      fail(line_number, p.id, "line object needs string field 'stress'");
    }
    AnnotatedLine line;
    line.stress = jl["stress"].get<std::string>();
    if (jl.contains("tokens")) {
      if (!jl["tokens"].is_array()) fail(line_number, p.id, "'tokens' must be an array");
      for (const auto& jt : jl["tokens"]) {
        if (!jt.is_object() || !jt.contains("lemma") || !jt["lemma"].is_string() ||
            !jt.contains("pos") || !jt["pos"].is_string()) {
          fail(line_number, p.id, "token needs string fields 'lemma' and 'pos'");
        }
        Token tok;
        tok.lemma = jt["lemma"].get<std::string>();
        tok.pos = jt["pos"].get<std::string>();
        if (jt.contains("surface") && jt["surface"].is_string()) {
          tok.surface = jt["surface"].get<std::string>();
        }
        line.tokens.push_back(std::move(tok));
      }
    }
    p.lines.push_back(std::move(line));
  }
  if (j.contains("rhyme") && !j["rhyme"].is_null()) {
    if (!j["rhyme"].is_array()) fail(line_number, p.id, "'rhyme' must be an array");
    std::vector<std::string> letters;
    for (const auto& r : j["rhyme"]) {
      if (!r.is_string()) fail(line_number, p.id, "rhyme entries must be strings");
      letters.push_back(r.get<std::string>());
    }
    p.rhyme = std::move(letters);
  }

  try {
    validate(p);
  } catch (const DataError& e) {
    fail(line_number, "", e.what());
  }
  return p;
}

std::string to_record(const Poem& poem) {
  json j;
  j["id"] = poem.id;
  j["author"] = poem.author ? json(*poem.author) : json(nullptr);
  j["year"] = poem.year ? json(*poem.year) : json(nullptr);
  json lines = json::array();
  for (const auto& line : poem.lines) {
    json tokens = json::array();
    for (const auto& tok : line.tokens) {
      json jt = {{"lemma", tok.lemma}, {"pos", tok.pos}};
      if (tok.surface) jt["surface"] = *tok.surface;
      tokens.push_back(std::move(jt));
    }
    lines.push_back({{"stress", line.stress}, {"tokens", std::move(tokens)}});
  }
  j["lines"] = std::move(lines);
  if (poem.rhyme) j["rhyme"] = *poem.rhyme;
  return j.dump();
}

Corpus read_corpus(std::istream& in, const std::string& source_name,
                   std::vector<std::string>* warnings) {
  Corpus c;
  c.provenance.source = source_name;
  c.provenance.loaded_at = now_utc();
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    Poem p = parse_record(line, line_number, warnings);
    if (!seen.insert(p.id).second) fail(line_number, p.id, "duplicate id");
    c.poems.push_back(std::move(p));
  }
  if (in.bad()) throw DataError(fmt::format("{}: read failure", source_name));
  return c;
}

Corpus load_corpus(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open corpus file '{}'", path));
  return read_corpus(in, path, warnings);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& p : corpus.poems) out << to_record(p) << '\n';
}

void save_corpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw DataError(fmt::format("cannot write corpus file '{}'", path));
  write_corpus(out, corpus);
  if (!out) throw DataError(fmt::format("write failure on '{}'", path));
}

Corpus filter_by_size(const Corpus& corpus, std::size_t min_tokens, std::size_t max_tokens) {
  if (min_tokens > max_tokens) {
    throw DataError(fmt::format("size filter: min_tokens {} exceeds max_tokens {}",
                                min_tokens, max_tokens));
  }
  Corpus out;
  out.provenance = corpus.provenance;
  out.provenance.config_digest += fmt::format(";size[{},{}]", min_tokens, max_tokens);
  for (const auto& p : corpus.poems) {
    const auto n = p.token_count();
    if (n >= min_tokens && n <= max_tokens) out.poems.push_back(p);
  }
  return out;
}

PeriodSplit split_by_period(const Corpus& corpus, int boundary_year) {
  PeriodSplit s;
  s.early.provenance = corpus.provenance;
  s.late.provenance = corpus.provenance;
  s.early.provenance.config_digest += fmt::format(";early<{}", boundary_year);
  s.late.provenance.config_digest += fmt::format(";late>={}", boundary_year);
  for (const auto& p : corpus.poems) {
    if (!p.year) {
      ++s.undated;
    } else if (*p.year < boundary_year) {
      s.early.poems.push_back(p);
    } else {
      s.late.poems.push_back(p);
    }
  }
  return s;
}

}  // namespace halo::corpus
