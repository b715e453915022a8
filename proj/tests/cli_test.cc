// Copyright 2026 The Aesthia Authors
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

#include "commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "aesthia/csv.h"
#include "aesthia/datasets.h"
#include "aesthia/events.h"
#include "aesthia/image_io.h"
#include "aesthia/ranking.h"
#include "aesthia/simulate.h"
#include "fixtures.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace aesthia::cli {
namespace {

using aesthia::testing::ReadFile;
using aesthia::testing::TempDir;
using aesthia::testing::WriteFile;

int Cli(std::initializer_list<std::string> args) {
  std::vector<std::string> owned = {"aesthia"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : owned) argv.push_back(a.c_str());
  return RunCli(static_cast<int>(argv.size()), argv.data());
}

// Runs and returns stdout.
std::string RunCapture(std::initializer_list<std::string> args, int* code) {
  ::testing::internal::CaptureStdout();
  *code = Cli(args);
  return ::testing::internal::GetCapturedStdout();
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  // Three 64x64 fixtures with distinct structure.
  std::string WriteManifest() const {
    WritePng(Path("disk.png"), testing::DiskImage());
    WritePng(Path("annulus.png"), testing::AnnulusImage());
    WritePng(Path("noise.png"), testing::RandomGray(64, 64, 3));
    WriteFile(dir_ / "manifest.csv",
              "id,path,score,category\n"
              "disk,disk.png,1.5,\n"
              "annulus,annulus.png,2.5,\n"
              "noise,noise.png,4,\n");
    return Path("manifest.csv");
  }

  TempDir dir_;
};

TEST_F(CliTest, MeasureWritesOneRowPerImage) {
  const std::string manifest = WriteManifest();
  ASSERT_EQ(Cli({"measure", manifest, "-o", Path("out.csv")}), kExitOk);
  const std::vector<std::string> lines = Lines(ReadFile(dir_ / "out.csv"));
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "id,S,E,T,gamma,C_a,C_s,C_mc,C_mc_E,D,D_a,S_k,score");
  EXPECT_EQ(lines[1].rfind("disk,", 0), 0u);
  EXPECT_EQ(lines[2].rfind("annulus,", 0), 0u);
  EXPECT_EQ(lines[3].rfind("noise,", 0), 0u);
  EXPECT_EQ(ReadResults(dir_ / "out.csv").rows(), 3u);
}

TEST_F(CliTest, MeasureSelectionRestrictsColumns) {
  const std::string manifest = WriteManifest();
  ASSERT_EQ(Cli({"measure", manifest, "-o", Path("out.csv"), "--measures", "S,D"}),
            kExitOk);
  const std::vector<std::string> lines = Lines(ReadFile(dir_ / "out.csv"));
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "id,S,D,score");
}

TEST_F(CliTest, MeasureRerunIsByteIdentical) {
  const std::string manifest = WriteManifest();
  ASSERT_EQ(Cli({"measure", manifest, "-o", Path("a.csv"), "-j", "1"}), kExitOk);
  ASSERT_EQ(Cli({"measure", manifest, "-o", Path("b.csv"), "-j", "3"}), kExitOk);
  EXPECT_EQ(ReadFile(dir_ / "a.csv"), ReadFile(dir_ / "b.csv"));
}

TEST_F(CliTest, MeasureFailureExitsNonZeroButWritesRows) {
  WriteManifest();
  WritePng(Path("flat.png"), GrayImage(64, 64, 128));
  WriteFile(dir_ / "with_flat.csv",
            "id,path,score,category\n"
            "disk,disk.png,1,\n"
            "flat,flat.png,2,\n");
  EXPECT_EQ(Cli({"measure", Path("with_flat.csv"), "-o", Path("out.csv")}),
            kExitPartial);
  const ResultsTable t = ReadResults(dir_ / "out.csv");
  ASSERT_EQ(t.rows(), 2u);
}

TEST_F(CliTest, MeasureConfigFileSuppliesDefaults) {
  const std::string manifest = WriteManifest();
  WriteFile(dir_ / "aesthia.toml", "[measure]\nmeasures = \"E\"\n");
  ASSERT_EQ(Cli({"--config", Path("aesthia.toml"), "measure", manifest, "-o",
                 Path("out.csv")}),
            kExitOk);
  EXPECT_EQ(Lines(ReadFile(dir_ / "out.csv"))[0], "id,E,score");
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  const std::string manifest = WriteManifest();
  EXPECT_EQ(Cli({}), kExitUsage);
  EXPECT_EQ(Cli({"measure", manifest}), kExitUsage);
  EXPECT_EQ(Cli({"measure", manifest, "-o", Path("o.csv"), "--bogus"}), kExitUsage);
  EXPECT_EQ(Cli({"measure", manifest, "-o", Path("o.csv"), "--measures", "Q"}),
            kExitUsage);
  EXPECT_EQ(Cli({"measure", manifest, "-o", Path("o.csv"), "--delta", "0.7"}),
            kExitUsage);
  EXPECT_EQ(Cli({"rank", Path("none.jsonl"), "-o", Path("r.csv"), "--max-rd", "0"}),
            kExitUsage);
}

TEST_F(CliTest, MissingInputIsUsageError) {
  EXPECT_EQ(Cli({"measure", Path("missing.csv"), "-o", Path("o.csv")}), kExitUsage);
  EXPECT_EQ(Cli({"rank", Path("missing.jsonl"), "-o", Path("r.csv")}), kExitUsage);
}

TEST_F(CliTest, UnusableInputExitsOne) {
  WriteFile(dir_ / "bad.csv", "name,file\nx,y\n");
  EXPECT_EQ(Cli({"measure", Path("bad.csv"), "-o", Path("o.csv")}), kExitPartial);
  WriteFile(dir_ / "dangling.csv", "id,path,score,category\na,nowhere.png,1,\n");
  EXPECT_EQ(Cli({"measure", Path("dangling.csv"), "-o", Path("o.csv")}), kExitPartial);
}

TEST_F(CliTest, CorrelateMarksExactLinearMeasure) {
  WriteFile(dir_ / "results.csv",
            "id,S,E,score\n"
            "a,0.1,0.9,0.2\n"
            "b,0.4,0.7,0.8\n"
            "c,0.3,0.2,0.6\n"
            "d,0.9,0.5,1.8\n");
  CorrelateOptions opts;
  opts.results = dir_ / "results.csv";
  std::ostringstream report;
  const CorrelationMatrix m = RunCorrelate(opts, report);
  ASSERT_TRUE(m.best_column);
  EXPECT_EQ(*m.best_column, "S");
  EXPECT_NEAR(m.At("S", "score")->r, 1.0, 1e-12);

  int code = -1;
  const std::string out = RunCapture({"correlate", Path("results.csv")}, &code);
  EXPECT_EQ(code, kExitOk);
  EXPECT_NE(out.find("S"), std::string::npos);
}

TEST_F(CliTest, CorrelateExcludesConstantColumn) {
  WriteFile(dir_ / "results.csv",
            "id,S,E,score\n"
            "a,0.1,1,0.2\n"
            "b,0.4,1,0.8\n"
            "c,0.3,1,0.5\n");
  CorrelateOptions opts;
  opts.results = dir_ / "results.csv";
  std::ostringstream report;
  const CorrelationMatrix m = RunCorrelate(opts, report);
  ASSERT_EQ(m.excluded.size(), 1u);
  EXPECT_EQ(m.excluded[0].first, "E");
  int code = -1;
  RunCapture({"correlate", Path("results.csv")}, &code);
  EXPECT_EQ(code, kExitOk);
}

TEST_F(CliTest, CorrelateNeedsThreeRows) {
  WriteFile(dir_ / "results.csv", "id,S,score\na,1,2\nb,2,3\n");
  CorrelateOptions opts;
  opts.results = dir_ / "results.csv";
  std::ostringstream report;
  EXPECT_THROW(RunCorrelate(opts, report), DomainError);
  EXPECT_EQ(Cli({"correlate", Path("results.csv")}), kExitPartial);
}

TEST_F(CliTest, CorrelateMissingScoreColumnIsUsageError) {
  WriteFile(dir_ / "results.csv", "id,S,E\na,1,2\nb,2,3\nc,4,1\n");
  EXPECT_EQ(Cli({"correlate", Path("results.csv")}), kExitUsage);
  EXPECT_EQ(Cli({"correlate", Path("results.csv"), "--score", "E", "--format", "csv"}),
            kExitOk);
}

TEST_F(CliTest, RankEmptyLog) {
  WriteFile(dir_ / "empty.jsonl", "");
  int code = -1;
  const std::string out =
      RunCapture({"rank", Path("empty.jsonl"), "-o", Path("r.csv")}, &code);
  EXPECT_EQ(code, kExitOk);
  EXPECT_EQ(out, "0 (0.0%)\n");
  EXPECT_EQ(ReadFile(dir_ / "r.csv"), "image_id,prompt,rating,rd,matches\n");
}

TEST_F(CliTest, RankSkipsCorruptLine) {
  SimulationOptions so;
  so.events = 100;
  so.items = 6;
  const Simulation sim = SimulateSurvey(so);
  std::string log;
  for (std::size_t i = 0; i < sim.events.size(); ++i) {
    log += i == 40 ? std::string("{\"comparison_id\": broken\n")
                   : EventToJson(sim.events[i]) + "\n";
  }
  WriteFile(dir_ / "log.jsonl", log);
  RankOptions opts;
  opts.log = dir_ / "log.jsonl";
  opts.out = dir_ / "r.csv";
  const RankReport report = RunRank(opts);
  EXPECT_EQ(report.applied, 99u);
  EXPECT_EQ(report.malformed, 1u);
  EXPECT_EQ(Cli({"rank", Path("log.jsonl"), "-o", Path("r.csv")}), kExitPartial);
}

TEST_F(CliTest, RankMatchesLibraryReplay) {
  ASSERT_EQ(Cli({"simulate", "-o", Path("sim.jsonl"), "-n", "2000", "--items",
                 "20", "--seed", "5"}),
            kExitOk);
  int code = -1;
  const std::string summary = RunCapture(
      {"rank", Path("sim.jsonl"), "-o", Path("r.csv"), "--max-rd", "290"}, &code);
  EXPECT_EQ(code, kExitOk);

  std::ifstream in(dir_ / "sim.jsonl");
  const EventLogReadResult log = ReadEventLog(in);
  ASSERT_EQ(log.events.size(), 2000u);
  const FilterResult kept = FilterByRd(Replay(log.events).table, 290.0);
  EXPECT_EQ(summary, FormatRetained(kept.retained, kept.total) + "\n");

  const std::vector<std::string> lines = Lines(ReadFile(dir_ / "r.csv"));
  std::size_t row = 1;
  for (Prompt prompt : {Prompt::kAesthetic, Prompt::kComplexity}) {
    for (const RankedImage& r : kept.table.Ranked("synthetic", prompt)) {
      ASSERT_LT(row, lines.size());
      EXPECT_EQ(lines[row++], r.image_id + "," + std::string(PromptName(prompt)) +
                                  "," + FormatNumber(r.rating.rating) + "," +
                                  FormatNumber(r.rating.rd) + "," +
                                  std::to_string(r.rating.matches));
    }
  }
  EXPECT_EQ(row, lines.size());
}

TEST_F(CliTest, RankDiscardsSlowComparisons) {
  ComparisonEvent fast{"c1", "s", "d", "a", "b", Prompt::kAesthetic,
                       Outcome::kLeft, 1000, 1};
  ComparisonEvent slow{"c2", "s", "d", "a", "b", Prompt::kAesthetic,
                       Outcome::kRight, 300001, 2};
  WriteFile(dir_ / "log.jsonl", EventToJson(fast) + "\n" + EventToJson(slow) + "\n");
  RankOptions opts;
  opts.log = dir_ / "log.jsonl";
  opts.out = dir_ / "r.csv";
  opts.discard_over_ms = 300000;
  const RankReport report = RunRank(opts);
  EXPECT_EQ(report.applied, 1u);
  EXPECT_EQ(report.discarded, 1u);
}

TEST_F(CliTest, SimulateIsDeterministic) {
  ASSERT_EQ(Cli({"simulate", "-o", Path("a.jsonl"), "--seed", "9", "--truth",
                 Path("a_truth.csv")}),
            kExitOk);
  ASSERT_EQ(Cli({"simulate", "-o", Path("b.jsonl"), "--seed", "9", "--truth",
                 Path("b_truth.csv")}),
            kExitOk);
  EXPECT_EQ(ReadFile(dir_ / "a.jsonl"), ReadFile(dir_ / "b.jsonl"));
  EXPECT_EQ(ReadFile(dir_ / "a_truth.csv"), ReadFile(dir_ / "b_truth.csv"));
  EXPECT_EQ(Lines(ReadFile(dir_ / "a.jsonl")).size(), 2000u);
  EXPECT_EQ(Lines(ReadFile(dir_ / "a_truth.csv")).size(), 21u);
}

TEST_F(CliTest, SimulateSingleEvent) {
  ASSERT_EQ(Cli({"simulate", "-o", Path("one.jsonl"), "-n", "1"}), kExitOk);
  EXPECT_EQ(Lines(ReadFile(dir_ / "one.jsonl")).size(), 1u);
  EXPECT_EQ(Cli({"simulate", "-o", Path("x.jsonl"), "-n", "0"}), kExitUsage);
  EXPECT_EQ(Cli({"simulate", "-o", Path("x.jsonl"), "--items", "1"}), kExitUsage);
}

constexpr const char* kSquareLayers =
    R"({"layers":[{"z":0,"polygons":[[[0,0],[4,0],[4,4],[0,4]]]},)"
    R"({"z":1,"polygons":[[[1,1],[3,1],[3,3],[1,3]]]}]})";
constexpr const char* kSquareAndCross =
    R"({"layers":[{"z":0,"polygons":[[[0,0],[3,0],[3,3],[0,3]]]},)"
    R"({"z":1,"polygons":[[[1,0],[2,0],[2,1],[3,1],[3,2],[2,2],)"
    R"([2,3],[1,3],[1,2],[0,2],[0,1],[1,1]]]}]})";

TEST_F(CliTest, PhysicalScoresForms) {
  const auto forms = dir_ / "forms";
  std::filesystem::create_directory(forms);
  WriteFile(forms / "a_square.json", kSquareLayers);
  WriteFile(forms / "b_cross.json", kSquareAndCross);
  ASSERT_EQ(Cli({"physical", forms.string(), "-o", Path("sc.csv")}), kExitOk);
  const std::vector<std::string> lines = Lines(ReadFile(dir_ / "sc.csv"));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "id,Sc");
  EXPECT_EQ(lines[1], "a_square,0");
  // Cross layer: convexity 1 - 5/7 and angle dispersion 0.5, averaged;
  // the square layer scores 0.
  const double cross = ((1.0 - 5.0 / 7.0) + 0.5) / 2.0;
  const std::size_t comma = lines[2].find(',');
  ASSERT_NE(comma, std::string::npos);
  EXPECT_EQ(lines[2].substr(0, comma), "b_cross");
  EXPECT_NEAR(std::stod(lines[2].substr(comma + 1)), cross / 2.0, 1e-8);
}

TEST_F(CliTest, PhysicalContinuesPastBadForm) {
  const auto forms = dir_ / "forms";
  std::filesystem::create_directory(forms);
  WriteFile(forms / "bad.json", R"({"layers":[{"z":0,"polygons":[[[0,0],[1,1],[2,2]]]}]})");
  WriteFile(forms / "good.json", kSquareLayers);
  EXPECT_EQ(Cli({"physical", forms.string(), "-o", Path("sc.csv")}), kExitPartial);
  const std::vector<std::string> lines = Lines(ReadFile(dir_ / "sc.csv"));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[1], "good,0");
}

TEST_F(CliTest, PhysicalEmptyDirectory) {
  const auto forms = dir_ / "forms";
  std::filesystem::create_directory(forms);
  EXPECT_EQ(Cli({"physical", forms.string(), "-o", Path("sc.csv")}), kExitOk);
  EXPECT_EQ(ReadFile(dir_ / "sc.csv"), "id,Sc\n");
}

}  // namespace
}  // namespace aesthia::cli
