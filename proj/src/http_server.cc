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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "httplib.h"
#include "json.hpp"
#include "spdlog/spdlog.h"

namespace aesthia {
namespace {

using nlohmann::json;

void SendJson(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void SendError(httplib::Response& res, int status, const std::string& message,
               const std::string& field = "") {
  json body = {{"error", message}};
  if (!field.empty()) body["field"] = field;
  SendJson(res, status, body);
}

json ParseBody(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded() || !body.is_object()) {
    throw ValidationError("body", "request body must be a JSON object");
  }
  return body;
}

std::string RequiredString(const json& body, const char* field) {
  auto it = body.find(field);
  if (it == body.end() || !it->is_string()) {
    throw ValidationError(field, std::string(field) + " must be a string");
  }
  return it->get<std::string>();
}

// Maps library exceptions to HTTP statuses.
template <typename Handler>
httplib::Server::Handler Guard(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const ValidationError& e) {
      SendError(res, 400, e.what(), e.field());
    } catch (const NotFoundError& e) {
      SendError(res, 404, e.what());
    } catch (const ConflictError& e) {
      SendError(res, 409, e.what());
    } catch (const Error& e) {
      spdlog::error("{} {}: {}", req.method, req.path, e.what());
      SendError(res, 500, e.what());
    }
  };
}

std::string UrlEncode(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out += static_cast<char>(c);
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    }
  }
  return out;
}

}  // namespace

std::string ContentTypeFor(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".gif") return "image/gif";
  if (ext == ".webp") return "image/webp";
  if (ext == ".svg") return "image/svg+xml";
  return "application/octet-stream";
}

struct SurveyHttpServer::Impl {
  explicit Impl(SurveyService& s) : service(s) {}

  void Routes(const std::optional<std::filesystem::path>& static_dir);

  SurveyService& service;
  httplib::Server server;
};

void SurveyHttpServer::Impl::Routes(
    const std::optional<std::filesystem::path>& static_dir) {
  server.Post("/api/sessions",
              Guard([this](const httplib::Request& req, httplib::Response& res) {
                const json body = ParseBody(req);
                Demographics d{RequiredString(body, "age_range"),
                               RequiredString(body, "gender"),
                               RequiredString(body, "expertise")};
                const Session s = service.CreateSession(d);
                SendJson(res, 201, {{"session_id", s.session_id}});
              }));

  server.Get(R"(/api/sessions/([^/]+)/next)",
             Guard([this](const httplib::Request& req, httplib::Response& res) {
               const std::string session = req.matches[1];
               const ComparisonEvent e = service.NextComparison(session);
               const std::string base = "/images/" + UrlEncode(e.dataset) + "/";
               SendJson(res, 200,
                        {{"comparison_id", e.comparison_id},
                         {"dataset", e.dataset},
                         {"left_url", base + UrlEncode(e.left)},
                         {"right_url", base + UrlEncode(e.right)},
                         {"prompt", PromptName(e.prompt)},
                         {"prompt_text", PromptText(e.prompt)},
                         {"completed", service.CompletedComparisons(session)}});
             }));

  server.Post(R"(/api/comparisons/([^/]+))",
              Guard([this](const httplib::Request& req, httplib::Response& res) {
                const json body = ParseBody(req);
                const auto outcome =
                    ParseOutcome(RequiredString(body, "outcome"));
                if (!outcome) {
                  throw ValidationError("outcome",
                                        "outcome must be left, right or tie");
                }
                auto d = body.find("duration_ms");
                if (d == body.end() || !d->is_number_integer()) {
                  throw ValidationError("duration_ms",
                                        "duration_ms must be an integer");
                }
                service.SubmitChoice(req.matches[1], *outcome,
                                     d->get<std::int64_t>());
                SendJson(res, 200, {{"ok", true}});
              }));

  server.Get("/api/rankings",
             Guard([this](const httplib::Request& req, httplib::Response& res) {
               if (!req.has_param("dataset")) {
                 throw ValidationError("dataset", "dataset is required");
               }
               const auto prompt =
                   ParsePrompt(req.has_param("prompt")
                                   ? req.get_param_value("prompt")
                                   : "aesthetic");
               if (!prompt) {
                 throw ValidationError("prompt",
                                       "prompt must be aesthetic or complexity");
               }
               std::optional<double> max_rd;
               if (req.has_param("max_rd")) {
                 const std::string text = req.get_param_value("max_rd");
                 char* end = nullptr;
                 const double v = std::strtod(text.c_str(), &end);
                 if (text.empty() || *end != '\0' || !(v > 0)) {
                   throw ValidationError("max_rd",
                                         "max_rd must be a positive number");
                 }
                 max_rd = v;
               }
               const RankingsView view = service.GetRankings(
                   req.get_param_value("dataset"), *prompt, max_rd);
               json rows = json::array();
               for (const RankedImage& r : view.images) {
                 rows.push_back({{"image_id", r.image_id},
                                 {"rating", r.rating.rating},
                                 {"rd", r.rating.rd},
                                 {"matches", r.rating.matches}});
               }
               SendJson(res, 200,
                        {{"dataset", view.dataset},
                         {"prompt", PromptName(view.prompt)},
                         {"rankings", rows},
                         {"retained", view.retained},
                         {"total", view.total},
                         {"retained_fraction", view.RetainedFraction()}});
             }));

  server.Get("/api/export",
             Guard([this](const httplib::Request&, httplib::Response& res) {
               res.set_content(service.ExportNdjson(), "application/x-ndjson");
             }));

  server.Get(R"(/images/([^/]+)/([^/]+))",
             Guard([this](const httplib::Request& req, httplib::Response& res) {
               const std::string dataset = req.matches[1];
               const std::string id = req.matches[2];
               const auto path = service.ImagePath(dataset, id);
               if (!path) {
                 throw NotFoundError("unknown image '" + dataset + "/" + id +
                                     "'");
               }
               std::ifstream in(*path, std::ios::binary);
               if (!in) throw NotFoundError("image file missing: " + path->string());
               std::string bytes((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
               res.set_content(std::move(bytes), ContentTypeFor(*path));
             }));

  if (static_dir) {
    if (!server.set_mount_point("/", static_dir->string())) {
      throw IoError("static directory not found: " + static_dir->string());
    }
  }

  server.set_logger([](const httplib::Request& req, const httplib::Response& res) {
    spdlog::debug("{} {} -> {}", req.method, req.path, res.status);
  });
}

SurveyHttpServer::SurveyHttpServer(
    SurveyService& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  impl_->Routes(static_dir);
}

SurveyHttpServer::~SurveyHttpServer() { Stop(); }

void SurveyHttpServer::Bind(const std::string& host, int port) {
  if (!impl_->server.bind_to_port(host, port)) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port));
  }
}

int SurveyHttpServer::BindToAnyPort(const std::string& host) {
  const int port = impl_->server.bind_to_any_port(host);
  if (port < 0) throw IoError("cannot bind any port on " + host);
  return port;
}

void SurveyHttpServer::Listen() {
  if (!impl_->server.listen_after_bind()) {
    if (impl_->server.is_running()) throw IoError("HTTP server failed");
  }
}

void SurveyHttpServer::Stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace aesthia
