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

#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "aesthia/csv.h"
#include "aesthia/datasets.h"
#include "aesthia/events.h"
#include "aesthia/geometry.h"
#include "aesthia/http_server.h"
#include "aesthia/image_io.h"
#include "aesthia/ranking.h"
#include "aesthia/simulate.h"
#include "aesthia/survey.h"
#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"

namespace aesthia::cli {
namespace {

std::ofstream OpenOutput(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void CloseOutput(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw IoError("error writing " + path.string());
}

// Keeps rows whose score is present and >= `min_score`.
ResultsTable FilterByScore(const ResultsTable& table, const std::string& score,
                           double min_score) {
  ResultsTable kept;
  for (const std::string& c : table.columns()) kept.AddColumn(c);
  const auto scores = table.Column(score);
  for (std::size_t r = 0; r < table.rows(); ++r) {
    if (!scores[r] || *scores[r] < min_score) continue;
    const std::size_t row = kept.AddRow(table.ids()[r]);
    for (const std::string& c : table.columns()) kept.Set(row, c, table.Get(r, c));
  }
  return kept;
}

}  // namespace

void ConfigureLogging() {
  auto logger = spdlog::get("aesthia");
  if (!logger) {
    logger = spdlog::stderr_color_mt("aesthia");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
  }
  spdlog::level::level_enum level = spdlog::level::info;
  if (const char* env = std::getenv("AESTHIA_LOG"); env && *env) {
    level = spdlog::level::from_str(env);
    if (level == spdlog::level::off && std::string_view(env) != "off") {
      level = spdlog::level::info;
      spdlog::warn("unknown AESTHIA_LOG level '{}', using info", env);
    }
  }
  spdlog::set_level(level);
}

MeasureReport RunMeasure(const MeasureOptions& options) {
  options.config.Validate();
  const DatasetManifest manifest = LoadManifest(options.manifest);
  const std::size_t n = manifest.entries.size();
  std::vector<MeasureVector> results(n);

  std::size_t jobs = options.jobs > 0
                         ? static_cast<std::size_t>(options.jobs)
                         : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(n, 1));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const ManifestEntry& entry = manifest.entries[i];
      try {
        results[i] = MeasureAll(LoadImage(entry.path.string()), options.config,
                                options.selection);
      } catch (const Error& e) {
        results[i].failures.emplace_back("image", e.what());
      }
      const std::size_t k = ++done;
      spdlog::info("measured {}/{} {}", k, n, entry.id);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  MeasureReport report;
  report.images = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [measure, message] : results[i].failures) {
      report.failures.emplace_back(manifest.entries[i].id,
                                   measure + ": " + message);
    }
  }
  WriteResults(BuildResultsTable(manifest, results, options.selection),
               options.out);
  return report;
}

CorrelationMatrix RunCorrelate(const CorrelateOptions& options,
                               std::ostream& out) {
  ResultsTable table = ReadResults(options.results);
  if (!table.HasColumn(options.score_column)) {
    throw ParameterError("score column '" + options.score_column +
                         "' not found in " + options.results.string());
  }
  if (options.min_score) {
    table = FilterByScore(table, options.score_column, *options.min_score);
  }
  if (table.rows() < 3) {
    throw DomainError("correlation needs n >= 3 rows, got " +
                         std::to_string(table.rows()));
  }
  std::vector<std::string> columns = table.columns();
  std::erase(columns, options.score_column);
  columns.push_back(options.score_column);

  MatrixOptions mo;
  mo.method = options.method;
  mo.missing = options.complete_rows ? MissingPolicy::kCompleteRows
                                     : MissingPolicy::kPairwise;
  mo.score_column = options.score_column;
  CorrelationMatrix m = ComputeCorrelationMatrix(table, columns, mo);
  for (const auto& [name, why] : m.excluded) {
    spdlog::warn("excluded column {}: {}", name, why);
  }
  if (!m.score_column) {
    throw DomainError("score column '" + options.score_column +
                      "' cannot be correlated");
  }
  switch (options.format) {
    case MatrixFormat::kText:
      out << FormatMatrixText(m);
      break;
    case MatrixFormat::kCsv:
      out << FormatMatrixCsv(m);
      break;
    case MatrixFormat::kMarkdown:
      out << FormatMatrixMarkdown(m);
      break;
  }
  return m;
}

RankReport RunRank(const RankOptions& options) {
  if (!(options.max_rd > 0)) throw ParameterError("--max-rd must be > 0");
  std::ifstream in(options.log, std::ios::binary);
  if (!in) throw IoError("cannot read " + options.log.string());
  EventLogReadResult log = ReadEventLog(in);

  RankReport report;
  report.malformed = log.malformed.size();
  for (const auto& [line, reason] : log.malformed) {
    spdlog::warn("{}:{}: skipped: {}", options.log.string(), line, reason);
  }
  std::vector<ComparisonEvent> events;
  for (ComparisonEvent& e : log.events) {
    if (!e.outcome) continue;
    if (options.dataset && e.dataset != *options.dataset) continue;
    events.push_back(std::move(e));
  }
  if (options.discard_over_ms) {
    const std::size_t before = events.size();
    events = DiscardSlow(std::move(events), *options.discard_over_ms);
    report.discarded = before - events.size();
  }
  const ReplayResult replay = Replay(events);
  report.applied = replay.applied;
  report.rejected = replay.rejected.size();
  for (const auto& [index, reason] : replay.rejected) {
    spdlog::warn("event {} rejected: {}", events[index].comparison_id, reason);
  }
  const FilterResult kept = FilterByRd(replay.table, options.max_rd);
  report.retained = kept.retained;
  report.total = kept.total;

  const std::vector<std::string> datasets = kept.table.Datasets();
  const bool qualify = datasets.size() > 1;
  std::ofstream out = OpenOutput(options.out);
  out << "image_id,prompt,rating,rd,matches\n";
  for (Prompt prompt : {Prompt::kAesthetic, Prompt::kComplexity}) {
    for (const std::string& dataset : datasets) {
      for (const RankedImage& r : kept.table.Ranked(dataset, prompt)) {
        const std::string id = qualify ? dataset + "/" + r.image_id : r.image_id;
        out << CsvField(id) << ',' << PromptName(prompt) << ','
            << FormatNumber(r.rating.rating) << ',' << FormatNumber(r.rating.rd)
            << ',' << r.rating.matches << '\n';
      }
    }
  }
  CloseOutput(out, options.out);
  return report;
}

void RunSimulate(const SimulateOptions& options) {
  SimulationOptions so;
  so.events = options.events;
  so.items = options.items;
  so.seed = options.seed;
  so.tie_probability = options.tie_probability;
  so.dataset = options.dataset;
  const Simulation sim = SimulateSurvey(so);

  std::ofstream out = OpenOutput(options.out);
  for (const ComparisonEvent& e : sim.events) out << EventToJson(e) << '\n';
  CloseOutput(out, options.out);

  if (options.truth) {
    std::ofstream truth = OpenOutput(*options.truth);
    truth << "image_id,aesthetic,complexity\n";
    for (std::size_t i = 0; i < sim.items.size(); ++i) {
      truth << CsvField(sim.items[i]) << ','
            << FormatNumber(sim.strengths[0][i]) << ','
            << FormatNumber(sim.strengths[1][i]) << '\n';
    }
    CloseOutput(truth, *options.truth);
  }
}

PhysicalReport RunPhysical(const PhysicalOptions& options) {
  std::error_code ec;
  if (!std::filesystem::is_directory(options.forms_dir, ec)) {
    throw IoError("not a directory: " + options.forms_dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry :
       std::filesystem::directory_iterator(options.forms_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return a.filename().string() < b.filename().string();
  });
  if (files.empty()) {
    spdlog::warn("no form files (*.json) in {}", options.forms_dir.string());
  }

  PhysicalReport report;
  std::ofstream out = OpenOutput(options.out);
  out << "id,Sc\n";
  for (const auto& file : files) {
    const std::string id = file.stem().string();
    try {
      const double sc = PhysicalComplexity(LoadLayeredForm(file.string()));
      out << CsvField(id) << ',' << FormatNumber(sc) << '\n';
      ++report.forms;
    } catch (const Error& e) {
      spdlog::error("{}: {}", file.string(), e.what());
      report.failures.emplace_back(id, e.what());
    }
  }
  CloseOutput(out, options.out);
  return report;
}

namespace {

struct ServeOptions {
  std::vector<std::string> datasets;  // name=manifest
  std::string host = "0.0.0.0";
  int port = 8080;
  std::filesystem::path journal;
  std::optional<std::filesystem::path> static_dir;
  bool rd_sampler = false;
  std::optional<std::uint64_t> seed;
  bool no_sync = false;
};

int RunServe(const ServeOptions& options) {
  ServiceOptions so;
  for (const std::string& spec : options.datasets) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw ParameterError("--dataset expects name=manifest.csv, got '" + spec +
                           "'");
    }
    so.datasets.push_back(
        LoadManifest(spec.substr(eq + 1), spec.substr(0, eq)));
  }
  so.journal_path = options.journal;
  so.rd_biased_sampler = options.rd_sampler;
  so.seed = options.seed;
  so.sync_writes = !options.no_sync;

  // Signals are taken synchronously by a waiter thread so that shutdown
  // runs outside a signal handler.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  SurveyService service(std::move(so));
  SurveyHttpServer server(service, options.static_dir);
  server.Bind(options.host, options.port);
  spdlog::info("serving {} dataset(s) on http://{}:{}",
               service.datasets().size(), options.host, options.port);

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    spdlog::info("shutting down");
    server.Stop();
  });
  server.Listen();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kExitOk;
}

void AddMeasureConfig(CLI::App* app, MeasureConfig& cfg) {
  app->add_option("--r-adapt", cfg.r_adapt, "adaptive binarisation radius")
      ->capture_default_str();
  app->add_option("--r-cg", cfg.r_cg, "coarse-grain radius")
      ->capture_default_str();
  app->add_option("--delta", cfg.delta, "coarse-grain threshold")
      ->capture_default_str();
  app->add_option("--jpeg-quality", cfg.jpeg_quality,
                  "lossy codec quality in (0, 1]")
      ->capture_default_str();
  app->add_option("--peak", cfg.peak, "preferred fractal dimension")
      ->capture_default_str();
  app->add_option("--sigma", cfg.sigma, "fractal preference width")
      ->capture_default_str();
  app->add_option("--box-min", cfg.box_min, "smallest box edge in pixels")
      ->capture_default_str();
  app->add_option("--box-max-frac", cfg.box_max_frac,
                  "largest box edge as a fraction of min(width, height)")
      ->capture_default_str();
}

}  // namespace

int RunCli(int argc, const char* const* argv) {
  ConfigureLogging();
  CLI::App app{"Image complexity measures, correlation reports and survey "
               "tooling"};
  app.name("aesthia");
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);

  MeasureOptions measure;
  std::string measure_list;
  auto* measure_cmd = app.add_subcommand("measure", "compute measures for a manifest");
  measure_cmd->add_option("manifest", measure.manifest, "manifest CSV")
      ->required()->check(CLI::ExistingFile);
  measure_cmd->add_option("-o,--out", measure.out, "results CSV")->required();
  measure_cmd->add_option("--measures", measure_list,
                          "comma-separated subset, e.g. S,D");
  measure_cmd->add_option("-j,--jobs", measure.jobs, "worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  AddMeasureConfig(measure_cmd, measure.config);

  CorrelateOptions correlate;
  std::string method = "pearson";
  std::string format = "text";
  std::optional<std::filesystem::path> correlate_out;
  auto* correlate_cmd = app.add_subcommand("correlate", "correlation matrix report");
  correlate_cmd->add_option("results", correlate.results, "results CSV")
      ->required()->check(CLI::ExistingFile);
  correlate_cmd->add_option("--score", correlate.score_column, "score column")
      ->capture_default_str();
  correlate_cmd->add_option("--method", method, "pearson or spearman")
      ->check(CLI::IsMember({"pearson", "spearman"}))->capture_default_str();
  correlate_cmd->add_flag("--complete-rows", correlate.complete_rows,
                          "drop rows with any missing value");
  correlate_cmd->add_option("--min-score", correlate.min_score,
                            "drop rows scoring below this");
  correlate_cmd->add_option("--format", format, "text, csv or markdown")
      ->check(CLI::IsMember({"text", "csv", "markdown"}))->capture_default_str();
  correlate_cmd->add_option("-o,--out", correlate_out, "write report here");

  RankOptions rank;
  auto* rank_cmd = app.add_subcommand("rank", "replay an event log into ratings");
  rank_cmd->add_option("log", rank.log, "JSON-lines event log")
      ->required()->check(CLI::ExistingFile);
  rank_cmd->add_option("-o,--out", rank.out, "ranking CSV")->required();
  rank_cmd->add_option("--max-rd", rank.max_rd, "keep images with RD below this")
      ->capture_default_str();
  rank_cmd->add_option("--dataset", rank.dataset, "only this dataset");
  rank_cmd->add_option("--discard-over-ms", rank.discard_over_ms,
                       "drop comparisons slower than this")
      ->check(CLI::NonNegativeNumber);

  SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "synthetic survey log");
  simulate_cmd->add_option("-o,--out", simulate.out, "event log")->required();
  simulate_cmd->add_option("--truth", simulate.truth,
                           "write generating strengths CSV");
  simulate_cmd->add_option("-n,--events", simulate.events, "number of events")
      ->capture_default_str();
  simulate_cmd->add_option("--items", simulate.items, "number of images")
      ->capture_default_str();
  simulate_cmd->add_option("--seed", simulate.seed, "random seed")
      ->capture_default_str();
  simulate_cmd->add_option("--tie-probability", simulate.tie_probability,
                           "chance of a can't-decide answer")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  simulate_cmd->add_option("--dataset", simulate.dataset, "dataset name")
      ->capture_default_str();

  PhysicalOptions physical;
  auto* physical_cmd = app.add_subcommand("physical", "score layered forms");
  physical_cmd->add_option("forms", physical.forms_dir, "directory of form JSON")
      ->required();
  physical_cmd->add_option("-o,--out", physical.out, "Sc CSV")->required();

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "run the survey backend");
  serve_cmd->add_option("--dataset", serve.datasets, "name=manifest.csv")
      ->required();
  serve_cmd->add_option("--journal", serve.journal, "append-only event log")
      ->required();
  serve_cmd->add_option("--host", serve.host, "bind address")->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "TCP port")
      ->check(CLI::Range(1, 65535))->capture_default_str();
  serve_cmd->add_option("--static", serve.static_dir, "UI bundle directory");
  serve_cmd->add_flag("--rd-sampler", serve.rd_sampler,
                      "favour high-RD images when drawing pairs");
  serve_cmd->add_option("--seed", serve.seed, "seed pair sampling");
  serve_cmd->add_flag("--no-sync", serve.no_sync, "skip fsync after appends");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*measure_cmd) {
      if (!measure_list.empty()) {
        measure.selection = MeasureSelection::Parse(measure_list);
      }
      measure.config.Validate();
      const MeasureReport report = RunMeasure(measure);
      for (const auto& [id, why] : report.failures) {
        spdlog::error("{}: {}", id, why);
      }
      spdlog::info("wrote {} rows to {}", report.images, measure.out.string());
      return report.failures.empty() ? kExitOk : kExitPartial;
    }
    if (*correlate_cmd) {
      correlate.method = method == "spearman" ? CorrelationMethod::kSpearman
                                              : CorrelationMethod::kPearson;
      correlate.format = format == "csv"        ? MatrixFormat::kCsv
                         : format == "markdown" ? MatrixFormat::kMarkdown
                                                : MatrixFormat::kText;
      if (correlate_out) {
        std::ofstream out = OpenOutput(*correlate_out);
        RunCorrelate(correlate, out);
        CloseOutput(out, *correlate_out);
      } else {
        RunCorrelate(correlate, std::cout);
      }
      return kExitOk;
    }
    if (*rank_cmd) {
      const RankReport report = RunRank(rank);
      if (report.malformed > 0) {
        spdlog::warn("{} malformed line(s) skipped", report.malformed);
      }
      spdlog::info("applied {} event(s)", report.applied);
      std::cout << FormatRetained(report.retained, report.total) << '\n';
      return report.malformed + report.rejected == 0 ? kExitOk : kExitPartial;
    }
    if (*simulate_cmd) {
      RunSimulate(simulate);
      return kExitOk;
    }
    if (*physical_cmd) {
      const PhysicalReport report = RunPhysical(physical);
      return report.failures.empty() ? kExitOk : kExitPartial;
    }
    if (*serve_cmd) return RunServe(serve);
  } catch (const ParameterError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return kExitPartial;
  }
  return kExitUsage;
}

}  // namespace aesthia::cli
