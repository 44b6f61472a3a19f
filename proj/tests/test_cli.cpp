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

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "halo/cli.hpp"
#include "halo/csv.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using halo::cli::run;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / fmt::format("halo-cli-{}-{}", ::getpid(), counter++);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

// Runs the CLI with stderr/stdout captured.
int quiet(std::vector<std::string> args) {
  args.insert(args.begin(), "halo");
  std::ostringstream sink;
  auto* err = std::cerr.rdbuf(sink.rdbuf());
  auto* out = std::cout.rdbuf(sink.rdbuf());
  const int code = run(args);
  std::cerr.rdbuf(err);
  std::cout.rdbuf(out);
  return code;
}

void write(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(quiet({}) == 2);
  CHECK(quiet({"frobnicate"}) == 2);
  CHECK(quiet({"scan", "--no-such-flag"}) == 2);
  CHECK(quiet({"scan"}) == 2);  // --in is required
  CHECK(quiet({"--version"}) == 0);
}

TEST_CASE("bad data exits with 1") {
  TempDir dir;
  write(dir / "bad.jsonl", "{not json\n");
  CHECK(quiet({"ingest", "--in", dir / "bad.jsonl", "--out", dir / "c.jsonl"}) == 1);
  CHECK(quiet({"scan", "--in", dir / "missing.jsonl", "--out", dir / "l.csv"}) == 1);
  write(dir / "theta.csv", "poem_id,t0\na,zero\n");
  write(dir / "labels.csv", "poem_id,label\na,I4\n");
  CHECK(quiet({"h1", "--theta", dir / "theta.csv", "--labels", dir / "labels.csv", "--out", dir / "h1"}) == 1);
}

TEST_CASE("scan leaves unlabelable poems with an empty label") {
  TempDir dir;
  write(dir / "c.jsonl",
        R"({"id":"odd","lines":[{"stress":"11"},{"stress":"111"},{"stress":"1111"}]})" "\n");
  REQUIRE(quiet({"scan", "--in", dir / "c.jsonl", "--out", dir / "labels.csv"}) == 0);
  std::ifstream in(dir / "labels.csv");
  const auto table = halo::csv::read(in);
  REQUIRE(table.rows.size() == 1);
  const int col = table.column("label");
  REQUIRE(col >= 0);
  CHECK(table.rows[0][static_cast<std::size_t>(col)].empty());
}

TEST_CASE("manifest records config and digests") {
  TempDir dir;
  REQUIRE(quiet({"synth", "--out", dir / "raw.jsonl", "--truth", dir / "truth.csv", "--poems-per-meter", "20",
                 "--seed", "5"}) == 0);
  REQUIRE(quiet({"scan", "--in", dir / "raw.jsonl", "--out", dir / "labels.csv"}) == 0);
  const auto m = nlohmann::json::parse(slurp(dir / "labels.csv.manifest.json"));
  CHECK(m["subcommand"] == "scan");
  CHECK(m["tool_version"] == halo::cli::kVersion);
  CHECK(m.contains("config"));
  CHECK(m.contains("wall_clock_seconds"));
  REQUIRE(m["inputs"].size() == 1);
  CHECK(m["inputs"][0]["sha256"] == halo::cli::file_digest(dir / "raw.jsonl"));
  CHECK(m["outputs"][0]["sha256"] == halo::cli::file_digest(dir / "labels.csv"));
  CHECK(halo::cli::file_digest(dir / "raw.jsonl").size() == 64);
}

TEST_CASE("file digest of a known string") {
  TempDir dir;
  write(dir / "abc", "abc");
  CHECK(halo::cli::file_digest(dir / "abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("h1 output is identical across runs and thread settings") {
  TempDir dir;
  REQUIRE(quiet({"synth", "--out", dir / "raw.jsonl", "--truth", dir / "truth.csv", "--poems-per-meter", "80", "--seed", "2"}) == 0);
  REQUIRE(quiet({"scan", "--in", dir / "raw.jsonl", "--out", dir / "labels.csv"}) == 0);
  REQUIRE(quiet({"train-lda", "--in", dir / "raw.jsonl", "--model", dir / "model.txt", "--theta", dir / "theta.csv",
                 "--topics", "6", "--iterations", "30", "--burn-in", "10", "--lag", "5"}) == 0);
  auto h1 = [&](const std::string& threads, const std::string& out) {
    return quiet({"--threads", threads, "h1", "--theta", dir / "theta.csv", "--labels", dir / "labels.csv", "--out",
                  dir / out, "--min-poems", "40", "--sample-size", "10", "--iterations", "16"});
  };
  REQUIRE(h1("0", "a") == 0);
  REQUIRE(h1("1", "b") == 0);
  REQUIRE(h1("0", "c") == 0);
  const auto a = slurp(dir / "a.values.csv");
  CHECK(!a.empty());
  CHECK(a == slurp(dir / "b.values.csv"));
  CHECK(a == slurp(dir / "c.values.csv"));
  CHECK(slurp(dir / "a.summary.json") == slurp(dir / "b.summary.json"));
}
