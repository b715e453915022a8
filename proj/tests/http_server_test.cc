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

#include "aesthia/http_server.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aesthia/simulate.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "survey_harness.h"

namespace aesthia {
namespace {

using nlohmann::json;
using testing::ReadFile;
using testing::ServerHarness;
using testing::TempDir;

constexpr const char* kAnonBody =
    R"({"age_range":"undisclosed","gender":"undisclosed","expertise":"undisclosed"})";

class HttpApiTest : public ::testing::Test {
 protected:
  ServiceOptions Options() const {
    ServiceOptions o;
    o.datasets = {testing::MakePngDataset(dir_.path(), "lines", 5),
                  testing::MakePngDataset(dir_.path(), "prints", 4)};
    o.journal_path = dir_ / "journal.jsonl";
    o.seed = 7;
    o.sync_writes = false;
    return o;
  }

  std::string NewSession(httplib::Client& c) {
    auto res = c.Post("/api/sessions", kAnonBody, "application/json");
    EXPECT_TRUE(res);
    EXPECT_EQ(res->status, 201);
    return json::parse(res->body)["session_id"].get<std::string>();
  }

  TempDir dir_;
};

TEST_F(HttpApiTest, CreateSessionReturnsDistinctTokens) {
  ServerHarness h(Options());
  auto c = h.Client();
  const std::string a = NewSession(c);
  const std::string b = NewSession(c);
  EXPECT_FALSE(a.empty());
  EXPECT_NE(a, b);
}

TEST_F(HttpApiTest, InvalidDemographicsNameTheField) {
  ServerHarness h(Options());
  auto c = h.Client();
  auto res = c.Post(
      "/api/sessions",
      R"({"age_range":"7","gender":"undisclosed","expertise":"undisclosed"})",
      "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["field"], "age_range");

  res = c.Post("/api/sessions", R"({"age_range":"65+","gender":"undisclosed"})",
               "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["field"], "expertise");

  res = c.Post("/api/sessions", "not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["field"], "body");
}

TEST_F(HttpApiTest, NextComparisonPayload) {
  ServerHarness h(Options());
  auto c = h.Client();
  const std::string sid = NewSession(c);
  auto res = c.Get("/api/sessions/" + sid + "/next");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");
  const json j = json::parse(res->body);
  const std::string dataset = j["dataset"];
  EXPECT_TRUE(dataset == "lines" || dataset == "prints");
  const std::string left = j["left_url"];
  const std::string right = j["right_url"];
  EXPECT_EQ(left.rfind("/images/" + dataset + "/", 0), 0u);
  EXPECT_EQ(right.rfind("/images/" + dataset + "/", 0), 0u);
  EXPECT_NE(left, right);
  const std::string prompt = j["prompt"];
  if (prompt == "aesthetic") {
    EXPECT_EQ(j["prompt_text"], "Which one of these images do you like the most?");
  } else {
    EXPECT_EQ(prompt, "complexity");
    EXPECT_EQ(j["prompt_text"], "Which of these images is more complex?");
  }
  EXPECT_EQ(j["completed"], 0);
  EXPECT_FALSE(j["comparison_id"].get<std::string>().empty());
}

TEST_F(HttpApiTest, UnknownSessionIs404) {
  ServerHarness h(Options());
  auto c = h.Client();
  auto res = c.Get("/api/sessions/nope/next");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
}

TEST_F(HttpApiTest, SubmitCountsAndRejectsDuplicates) {
  ServerHarness h(Options());
  auto c = h.Client();
  const std::string sid = NewSession(c);
  const json next = json::parse(c.Get("/api/sessions/" + sid + "/next")->body);
  const std::string cid = next["comparison_id"];
  const std::string body = R"({"outcome":"tie","duration_ms":1234})";

  auto res = c.Post("/api/comparisons/" + cid, body, "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["ok"], true);

  const std::string journal = ReadFile(dir_ / "journal.jsonl");
  res = c.Post("/api/comparisons/" + cid, body, "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 409);
  EXPECT_EQ(ReadFile(dir_ / "journal.jsonl"), journal);

  const json again = json::parse(c.Get("/api/sessions/" + sid + "/next")->body);
  EXPECT_EQ(again["completed"], 1);
}

TEST_F(HttpApiTest, SubmitValidation) {
  ServerHarness h(Options());
  auto c = h.Client();
  const std::string sid = NewSession(c);
  const std::string cid =
      json::parse(c.Get("/api/sessions/" + sid + "/next")->body)["comparison_id"];
  const std::string url = "/api/comparisons/" + cid;

  auto res = c.Post(url, R"({"outcome":"up","duration_ms":5})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["field"], "outcome");

  res = c.Post(url, R"({"outcome":"left","duration_ms":"5"})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["field"], "duration_ms");

  res = c.Post(url, R"({"outcome":"left","duration_ms":-1})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["field"], "duration_ms");

  res = c.Post("/api/comparisons/unknown", R"({"outcome":"left","duration_ms":5})",
               "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 409);

  // The failed attempts left the comparison pending.
  res = c.Post(url, R"({"outcome":"left","duration_ms":5})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
}

TEST_F(HttpApiTest, RankingsQueries) {
  ServerHarness h(Options());
  auto c = h.Client();

  auto res = c.Get("/api/rankings?dataset=lines&prompt=aesthetic&max_rd=290");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  json j = json::parse(res->body);
  EXPECT_TRUE(j["rankings"].empty());
  EXPECT_EQ(j["retained"], 0);
  EXPECT_EQ(j["total"], 5);
  EXPECT_EQ(j["retained_fraction"], 0.0);

  res = c.Get("/api/rankings?dataset=lines");
  ASSERT_TRUE(res);
  j = json::parse(res->body);
  EXPECT_EQ(j["prompt"], "aesthetic");
  ASSERT_EQ(j["rankings"].size(), 5u);
  for (const json& row : j["rankings"]) {
    EXPECT_EQ(row["rating"], kInitialRating);
    EXPECT_EQ(row["rd"], kInitialRd);
    EXPECT_EQ(row["matches"], 0);
  }

  res = c.Get("/api/rankings?dataset=missing");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  res = c.Get("/api/rankings?dataset=lines&prompt=beauty");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["field"], "prompt");
  res = c.Get("/api/rankings?dataset=lines&max_rd=-3");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["field"], "max_rd");
  res = c.Get("/api/rankings");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
}

TEST_F(HttpApiTest, SubmissionMovesRankings) {
  ServerHarness h(Options());
  auto c = h.Client();
  const std::string sid = NewSession(c);
  const json next = json::parse(c.Get("/api/sessions/" + sid + "/next")->body);
  ASSERT_EQ(c.Post("/api/comparisons/" + next["comparison_id"].get<std::string>(),
                   R"({"outcome":"left","duration_ms":900})", "application/json")
                ->status,
            200);
  const json j = json::parse(
      c.Get("/api/rankings?dataset=" + next["dataset"].get<std::string>() +
            "&prompt=" + next["prompt"].get<std::string>())
          ->body);
  const json& top = j["rankings"][0];
  EXPECT_EQ(top["matches"], 1);
  EXPECT_NEAR(top["rating"].get<double>(), 1662.2, 0.5);
  EXPECT_LT(top["rd"].get<double>(), kInitialRd);
}

TEST_F(HttpApiTest, ExportIsNdjsonOfFinalizedEvents) {
  ServerHarness h(Options());
  auto c = h.Client();
  const std::string sid = NewSession(c);
  const std::string done =
      json::parse(c.Get("/api/sessions/" + sid + "/next")->body)["comparison_id"];
  c.Post("/api/comparisons/" + done, R"({"outcome":"right","duration_ms":301234})",
         "application/json");
  c.Get("/api/sessions/" + sid + "/next");  // left pending

  auto res = c.Get("/api/export");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/x-ndjson");
  std::istringstream in(res->body);
  const EventLogReadResult log = ReadEventLog(in);
  EXPECT_TRUE(log.malformed.empty());
  ASSERT_EQ(log.events.size(), 1u);
  EXPECT_EQ(log.events[0].comparison_id, done);
  EXPECT_EQ(log.events[0].outcome, Outcome::kRight);
  EXPECT_EQ(log.events[0].duration_ms, 301234);
}

TEST_F(HttpApiTest, ServesImageBytes) {
  ServerHarness h(Options());
  auto c = h.Client();
  auto res = c.Get("/images/prints/prints-2");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "image/png");
  EXPECT_EQ(res->body, ReadFile(dir_ / "prints-2.png"));

  res = c.Get("/images/prints/nope");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  res = c.Get("/images/nope/prints-2");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
}

TEST_F(HttpApiTest, ImageUrlsFromNextResolve) {
  ServerHarness h(Options());
  auto c = h.Client();
  const std::string sid = NewSession(c);
  const json next = json::parse(c.Get("/api/sessions/" + sid + "/next")->body);
  for (const char* key : {"left_url", "right_url"}) {
    auto res = c.Get(next[key].get<std::string>());
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
  }
}

TEST_F(HttpApiTest, EscapedIdsRoundTrip) {
  ServiceOptions o = Options();
  o.datasets = {testing::MakePngDataset(dir_.path(), "a b", 2)};
  ServerHarness h(o);
  auto c = h.Client();
  const std::string sid = NewSession(c);
  const json next = json::parse(c.Get("/api/sessions/" + sid + "/next")->body);
  const std::string url = next["left_url"];
  EXPECT_EQ(url.find(' '), std::string::npos);
  auto res = c.Get(url);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
}

TEST_F(HttpApiTest, ServesStaticBundle) {
  const auto bundle = dir_ / "ui";
  std::filesystem::create_directory(bundle);
  testing::WriteFile(bundle / "index.html", "<html>survey</html>");
  ServerHarness h(Options(), bundle);
  auto c = h.Client();
  auto res = c.Get("/index.html");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "<html>survey</html>");
  EXPECT_EQ(c.Get("/api/rankings?dataset=lines")->status, 200);
}

TEST_F(HttpApiTest, ConcurrentSubmissionsMatchReplayAndRestart) {
  const ServiceOptions options = Options();
  ServerHarness h(options);
  const testing::WorkloadReport report =
      testing::RunConcurrentWorkload(h, "lines", 10, 50);
  EXPECT_EQ(report.failures, 0);
  EXPECT_EQ(report.accepted, 500);
  EXPECT_EQ(report.duplicates_rejected, 100);

  auto c = h.Client();
  const std::string exported = c.Get("/api/export")->body;
  const RankingTable replayed = testing::ReplayExport(h.service(), exported);
  EXPECT_EQ(replayed, h.service().Snapshot());

  // Every live rankings response equals the replayed order and values.
  for (const std::string dataset : {"lines", "prints"}) {
    for (Prompt prompt : {Prompt::kAesthetic, Prompt::kComplexity}) {
      const json j = json::parse(
          c.Get("/api/rankings?dataset=" + dataset + "&prompt=" +
                std::string(PromptName(prompt)))
              ->body);
      const std::vector<RankedImage> expected = replayed.Ranked(dataset, prompt);
      ASSERT_EQ(j["rankings"].size(), expected.size());
      for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(j["rankings"][i]["image_id"], expected[i].image_id);
        EXPECT_EQ(j["rankings"][i]["rating"].get<double>(),
                  expected[i].rating.rating);
        EXPECT_EQ(j["rankings"][i]["rd"].get<double>(), expected[i].rating.rd);
        EXPECT_EQ(j["rankings"][i]["matches"], expected[i].rating.matches);
      }
    }
  }

  // A copy of the live journal stands in for the state after a crash.
  const auto crashed = dir_ / "crashed.jsonl";
  std::filesystem::copy_file(dir_ / "journal.jsonl", crashed);
  ServiceOptions restart = options;
  restart.journal_path = crashed;
  SurveyService recovered(restart);
  EXPECT_EQ(recovered.Snapshot(), h.service().Snapshot());
  EXPECT_EQ(recovered.ExportNdjson(), exported);
}

TEST_F(HttpApiTest, ExportOnlyGrows) {
  ServerHarness h(Options());
  auto c = h.Client();
  const std::string sid = NewSession(c);
  std::string previous;
  for (int i = 0; i < 5; ++i) {
    const std::string cid =
        json::parse(c.Get("/api/sessions/" + sid + "/next")->body)["comparison_id"];
    c.Post("/api/comparisons/" + cid, R"({"outcome":"left","duration_ms":10})",
           "application/json");
    const std::string now = c.Get("/api/export")->body;
    EXPECT_EQ(now.rfind(previous, 0), 0u);
    EXPECT_GT(now.size(), previous.size());
    previous = now;
  }
}

TEST_F(HttpApiTest, RankingsMatchOfflineReplayOfSimulatedLog) {
  SimulationOptions sim_options;
  sim_options.events = 2000;
  sim_options.items = 20;
  sim_options.seed = 11;
  const Simulation sim = SimulateSurvey(sim_options);

  // A journal holding the simulated log as issued and answered comparisons.
  ServiceOptions o;
  o.datasets = {DatasetManifest{"synthetic", {}}};
  for (const std::string& id : sim.items) {
    o.datasets[0].entries.push_back({id, dir_ / (id + ".png"), {}, {}});
  }
  o.journal_path = dir_ / "synthetic.jsonl";
  o.sync_writes = false;
  {
    std::ofstream journal(o.journal_path);
    for (const ComparisonEvent& e : sim.events) {
      ComparisonEvent pending = e;
      pending.outcome.reset();
      pending.duration_ms.reset();
      json issue = json::parse(EventToJson(pending));
      issue["kind"] = "issue";
      journal << issue.dump() << '\n';
      const json result = {{"kind", "result"},
                           {"comparison_id", e.comparison_id},
                           {"outcome", OutcomeName(*e.outcome)},
                           {"duration_ms", *e.duration_ms},
                           {"timestamp", e.timestamp_ms}};
      journal << result.dump() << '\n';
    }
  }
  ServerHarness h(o);
  auto c = h.Client();

  const FilterResult offline = FilterByRd(Replay(sim.events).table, 290.0);
  for (Prompt prompt : {Prompt::kAesthetic, Prompt::kComplexity}) {
    const json j = json::parse(
        c.Get("/api/rankings?dataset=synthetic&max_rd=290&prompt=" +
              std::string(PromptName(prompt)))
            ->body);
    const std::vector<RankedImage> expected = offline.table.Ranked("synthetic", prompt);
    ASSERT_EQ(j["rankings"].size(), expected.size());
    EXPECT_EQ(j["retained"], offline.retained);
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_EQ(j["rankings"][i]["image_id"], expected[i].image_id);
      EXPECT_EQ(j["rankings"][i]["rating"].get<double>(), expected[i].rating.rating);
    }
  }
}

}  // namespace
}  // namespace aesthia
