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

// HTTP+JSON front end over SurveyService.
//
//   POST /api/sessions               {age_range, gender, expertise}
//   GET  /api/sessions/{id}/next
//   POST /api/comparisons/{id}       {outcome, duration_ms}
//   GET  /api/rankings?dataset=&prompt=&max_rd=
//   GET  /api/export                 application/x-ndjson
//   GET  /images/{dataset}/{id}
//
// Errors are JSON objects {"error": message} plus "field" for validation
// failures, with status 400, 404 or 409.

#ifndef AESTHIA_HTTP_SERVER_H_
#define AESTHIA_HTTP_SERVER_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "aesthia/survey.h"

namespace aesthia {

class SurveyHttpServer {
 public:
  // `static_dir`, if set, is served at "/" (the UI bundle).
  SurveyHttpServer(SurveyService& service,
                   std::optional<std::filesystem::path> static_dir = {});
  ~SurveyHttpServer();

  SurveyHttpServer(const SurveyHttpServer&) = delete;
  SurveyHttpServer& operator=(const SurveyHttpServer&) = delete;

  // Binds `host`:`port`; throws IoError on failure.
  void Bind(const std::string& host, int port);
  // Binds an ephemeral port and returns it.
  int BindToAnyPort(const std::string& host);
  // Serves until Stop(); call after a Bind variant.
  void Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Content type guessed from the file extension.
std::string ContentTypeFor(const std::filesystem::path& path);

}  // namespace aesthia

#endif  // AESTHIA_HTTP_SERVER_H_
