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

// A survey service behind a live HTTP server on an ephemeral port, plus a
// concurrent client workload.

#ifndef AESTHIA_TESTS_SURVEY_HARNESS_H_
#define AESTHIA_TESTS_SURVEY_HARNESS_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aesthia/events.h"
#include "aesthia/http_server.h"
#include "aesthia/image_io.h"
#include "aesthia/ranking.h"
#include "aesthia/survey.h"
#include "httplib.h"
#include "json.hpp"
#include "test_util.h"

namespace aesthia::testing {

// Writes `images` small PNGs and returns their manifest.
inline DatasetManifest MakePngDataset(const std::filesystem::path& dir,
                                      const std::string& name, int images) {
  DatasetManifest m;
  m.name = name;
  for (int i = 0; i < images; ++i) {
    const std::string id = name + "-" + std::to_string(i);
    const auto path = dir / (id + ".png");
    WritePng(path.string(), GrayImage(3, 2, static_cast<std::uint8_t>(10 * i)));
    m.entries.push_back({id, path, std::nullopt, std::nullopt});
  }
  return m;
}

class ServerHarness {
 public:
  explicit ServerHarness(ServiceOptions options,
                         std::optional<std::filesystem::path> static_dir = {})
      : service_(std::make_unique<SurveyService>(std::move(options))),
        server_(std::make_unique<SurveyHttpServer>(*service_, static_dir)) {
    port_ = server_->BindToAnyPort("127.0.0.1");
    thread_ = std::thread([this] { server_->Listen(); });
  }
  ~ServerHarness() {
    server_->Stop();
    thread_.join();
  }
  ServerHarness(const ServerHarness&) = delete;
  ServerHarness& operator=(const ServerHarness&) = delete;

  SurveyService& service() { return *service_; }
  int port() const { return port_; }
  httplib::Client Client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_connection_timeout(5);
    c.set_read_timeout(30);
    return c;
  }

 private:
  std::unique_ptr<SurveyService> service_;
  std::unique_ptr<SurveyHttpServer> server_;
  std::thread thread_;
  int port_ = 0;
};

struct WorkloadReport {
  int accepted = 0;
  int duplicates_rejected = 0;
  int failures = 0;  // any unexpected status
};

// `clients` threads each open a session and submit `per_client` choices
// with random outcomes over HTTP. Every fifth choice is resubmitted (must
// be 409) and every seventh is followed by a rankings read.
inline WorkloadReport RunConcurrentWorkload(const ServerHarness& harness,
                                            const std::string& dataset,
                                            int clients, int per_client) {
  std::atomic<int> accepted{0}, duplicates{0}, failures{0};
  std::vector<std::thread> threads;
  for (int c = 0; c < clients; ++c) {
    threads.emplace_back([&, c] {
      httplib::Client client = harness.Client();
      std::mt19937 rng(static_cast<unsigned>(c) + 17);
      const char* outcomes[] = {"left", "right", "tie"};
      auto session = client.Post(
          "/api/sessions",
          R"({"age_range":"25-34","gender":"undisclosed","expertise":"amateur"})",
          "application/json");
      if (!session || session->status != 201) {
        failures += per_client;
        return;
      }
      const std::string sid =
          nlohmann::json::parse(session->body)["session_id"].get<std::string>();
      for (int i = 0; i < per_client; ++i) {
        auto next = client.Get("/api/sessions/" + sid + "/next");
        if (!next || next->status != 200) {
          ++failures;
          continue;
        }
        const std::string cid =
            nlohmann::json::parse(next->body)["comparison_id"].get<std::string>();
        const nlohmann::json body = {
            {"outcome", outcomes[rng() % 3]},
            {"duration_ms", static_cast<std::int64_t>(rng() % 20000)}};
        auto res = client.Post("/api/comparisons/" + cid, body.dump(),
                               "application/json");
        if (res && res->status == 200) {
          ++accepted;
        } else {
          ++failures;
        }
        if (i % 5 == 0) {
          auto again = client.Post("/api/comparisons/" + cid, body.dump(),
                                   "application/json");
          if (again && again->status == 409) {
            ++duplicates;
          } else {
            ++failures;
          }
        }
        if (i % 7 == 0) {
          auto r = client.Get("/api/rankings?dataset=" + dataset);
          if (!r || r->status != 200) ++failures;
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  return {accepted.load(), duplicates.load(), failures.load()};
}

// Replays an NDJSON export onto the service's seed table.
inline RankingTable ReplayExport(const SurveyService& service,
                                 const std::string& ndjson) {
  std::istringstream in(ndjson);
  const EventLogReadResult log = ReadEventLog(in);
  if (!log.malformed.empty()) throw FormatError("malformed export");
  ReplayResult r = Replay(log.events, service.SeedTable());
  if (!r.rejected.empty()) throw FormatError("rejected export event");
  return std::move(r.table);
}

}  // namespace aesthia::testing

#endif  // AESTHIA_TESTS_SURVEY_HARNESS_H_
