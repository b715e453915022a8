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

// Product-moment and rank correlation with two-sided p-values, and
// correlation matrices over a ResultsTable.

#ifndef AESTHIA_STATS_H_
#define AESTHIA_STATS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aesthia/results_table.h"

namespace aesthia {

struct Correlation {
  double r = 0;
  double p_value = 1;
  std::size_t n = 0;
};

// I_x(a, b) by Lentz's continued fraction.
double RegularizedIncompleteBeta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with `dof` degrees of freedom.
double StudentTwoSidedP(double t, double dof);

// Throws ParameterError for mismatched lengths or n < 3 and DomainError for
// a constant series.
Correlation Pearson(std::span<const double> xs, std::span<const double> ys);

// Pearson on average ranks (ties share the mean rank).
Correlation Spearman(std::span<const double> xs, std::span<const double> ys);

std::vector<double> AverageRanks(std::span<const double> values);

enum class CorrelationMethod { kPearson, kSpearman };

// Pairs where either side is missing are dropped before correlating.
Correlation Correlate(std::span<const std::optional<double>> xs,
                      std::span<const std::optional<double>> ys,
                      CorrelationMethod method = CorrelationMethod::kPearson);

enum class MissingPolicy {
  kPairwise,      // drop incomplete pairs per cell
  kCompleteRows,  // drop any row missing one of the requested columns
};

struct MatrixOptions {
  CorrelationMethod method = CorrelationMethod::kPearson;
  MissingPolicy missing = MissingPolicy::kPairwise;
  // When set, the measure column with the largest |r| against it is
  // reported as the best column.
  std::optional<std::string> score_column;
};

struct CorrelationMatrix {
  std::vector<std::string> columns;
  // cells[i][j] for j < i; empty when that pair could not be correlated.
  std::vector<std::vector<std::optional<Correlation>>> cells;
  // Columns dropped before correlating (constant or too few values), with
  // the reason.
  std::vector<std::pair<std::string, std::string>> excluded;
  std::optional<std::string> score_column;
  std::optional<std::string> best_column;

  // Symmetric lookup; the diagonal is r = 1.
  std::optional<Correlation> At(std::size_t i, std::size_t j) const;
  std::optional<Correlation> At(const std::string& a,
                                const std::string& b) const;
};

// Throws ParameterError naming the first requested column missing from the
// table.
CorrelationMatrix ComputeCorrelationMatrix(
    const ResultsTable& table, const std::vector<std::string>& columns,
    const MatrixOptions& options = {});

// Renderings of the lower triangle.
std::string FormatMatrixText(const CorrelationMatrix& m);
std::string FormatMatrixCsv(const CorrelationMatrix& m);
std::string FormatMatrixMarkdown(const CorrelationMatrix& m);

}  // namespace aesthia

#endif  // AESTHIA_STATS_H_
