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

#include "aesthia/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "aesthia/error.h"

namespace aesthia {
namespace {

double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1;
  const double qam = a - 1;
  double c = 1;
  double d = 1 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1) < kEps) break;
  }
  return h;
}

void CheckPair(std::size_t nx, std::size_t ny) {
  if (nx != ny) {
    throw ParameterError("correlation series differ in length (" +
                         std::to_string(nx) + " vs " + std::to_string(ny) +
                         ")");
  }
  if (nx < 3) {
    throw ParameterError("correlation needs n >= 3, got " + std::to_string(nx));
  }
}

bool IsConstant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; });
}

std::string Fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string Sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0 && b > 0)) throw ParameterError("incomplete beta needs a, b > 0");
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The continued fraction converges fastest below the mean.
  if (x < (a + 1) / (a + b + 2)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1 - front * BetaContinuedFraction(b, a, 1 - x) / b;
}

double StudentTwoSidedP(double t, double dof) {
  if (!(dof > 0)) throw ParameterError("degrees of freedom must be > 0");
  if (std::isinf(t)) return 0;
  return RegularizedIncompleteBeta(dof / 2, 0.5, dof / (dof + t * t));
}

Correlation Pearson(std::span<const double> xs, std::span<const double> ys) {
  CheckPair(xs.size(), ys.size());
  if (IsConstant(xs) || IsConstant(ys)) {
    throw DomainError("correlation undefined for a constant series");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  Correlation c;
  c.n = xs.size();
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double dof = n - 2;
  if (std::abs(c.r) >= 1) {
    c.p_value = 0;
  } else {
    c.p_value = StudentTwoSidedP(c.r * std::sqrt(dof / (1 - c.r * c.r)), dof);
  }
  return c;
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

Correlation Spearman(std::span<const double> xs, std::span<const double> ys) {
  CheckPair(xs.size(), ys.size());
  const std::vector<double> rx = AverageRanks(xs);
  const std::vector<double> ry = AverageRanks(ys);
  return Pearson(rx, ry);
}

Correlation Correlate(std::span<const std::optional<double>> xs,
                      std::span<const std::optional<double>> ys,
                      CorrelationMethod method) {
  if (xs.size() != ys.size()) {
    throw ParameterError("correlation series differ in length");
  }
  std::vector<double> a, b;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] && ys[i]) {
      a.push_back(*xs[i]);
      b.push_back(*ys[i]);
    }
  }
  return method == CorrelationMethod::kPearson ? Pearson(a, b)
                                               : Spearman(a, b);
}

std::optional<Correlation> CorrelationMatrix::At(std::size_t i,
                                                 std::size_t j) const {
  if (i == j) return Correlation{1.0, 0.0, 0};
  if (i < j) std::swap(i, j);
  return cells.at(i).at(j);
}

std::optional<Correlation> CorrelationMatrix::At(const std::string& a,
                                                 const std::string& b) const {
  auto index = [&](const std::string& name) {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
      throw ParameterError("column '" + name + "' not in matrix");
    }
    return static_cast<std::size_t>(it - columns.begin());
  };
  return At(index(a), index(b));
}

CorrelationMatrix ComputeCorrelationMatrix(
    const ResultsTable& table, const std::vector<std::string>& columns,
    const MatrixOptions& options) {
  for (const std::string& c : columns) {
    if (!table.HasColumn(c)) {
      throw ParameterError("missing column '" + c + "'");
    }
  }
  if (options.score_column && !table.HasColumn(*options.score_column)) {
    throw ParameterError("missing score column '" + *options.score_column +
                         "'");
  }

  std::vector<std::string> wanted = columns;
  if (options.score_column &&
      std::find(wanted.begin(), wanted.end(), *options.score_column) ==
          wanted.end()) {
    wanted.push_back(*options.score_column);
  }

  std::vector<bool> keep_row(table.rows(), true);
  if (options.missing == MissingPolicy::kCompleteRows) {
    for (const std::string& c : wanted) {
      auto col = table.Column(c);
      for (std::size_t r = 0; r < col.size(); ++r) {
        if (!col[r]) keep_row[r] = false;
      }
    }
  }
  auto filtered = [&](const std::string& c) {
    std::vector<std::optional<double>> out;
    auto col = table.Column(c);
    for (std::size_t r = 0; r < col.size(); ++r) {
      out.push_back(keep_row[r] ? col[r] : std::nullopt);
    }
    return out;
  };

  CorrelationMatrix m;
  std::vector<std::vector<std::optional<double>>> data;
  for (const std::string& c : wanted) {
    std::vector<std::optional<double>> values = filtered(c);
    std::vector<double> present;
    for (const auto& v : values) {
      if (v) present.push_back(*v);
    }
    if (present.size() < 3) {
      m.excluded.emplace_back(c, "fewer than 3 values");
      continue;
    }
    if (IsConstant(present)) {
      m.excluded.emplace_back(c, "constant column");
      continue;
    }
    m.columns.push_back(c);
    data.push_back(std::move(values));
  }

  m.cells.resize(m.columns.size());
  for (std::size_t i = 0; i < m.columns.size(); ++i) {
    m.cells[i].resize(i);
    for (std::size_t j = 0; j < i; ++j) {
      try {
        m.cells[i][j] = Correlate(data[i], data[j], options.method);
      } catch (const Error&) {
        m.cells[i][j] = std::nullopt;
      }
    }
  }

  if (options.score_column &&
      std::find(m.columns.begin(), m.columns.end(), *options.score_column) !=
          m.columns.end()) {
    m.score_column = options.score_column;
    double best = -1;
    for (const std::string& c : m.columns) {
      if (c == *options.score_column) continue;
      const auto cell = m.At(c, *options.score_column);
      if (cell && std::abs(cell->r) > best) {
        best = std::abs(cell->r);
        m.best_column = c;
      }
    }
  }
  return m;
}

namespace {

bool IsBestCell(const CorrelationMatrix& m, std::size_t i, std::size_t j,
                const std::optional<std::string>& score) {
  if (!m.best_column || !score) return false;
  const std::string& a = m.columns[i];
  const std::string& b = m.columns[j];
  return (a == *score && b == *m.best_column) ||
         (b == *score && a == *m.best_column);
}

}  // namespace

std::string FormatMatrixText(const CorrelationMatrix& m) {
  const auto& score = m.score_column;
  std::size_t label_width = 4;
  for (const auto& c : m.columns) label_width = std::max(label_width, c.size());
  constexpr int kCell = 9;
  std::ostringstream out;
  auto pad = [&](const std::string& s, std::size_t w) {
    return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
  };
  out << pad("", label_width);
  for (const auto& c : m.columns) out << pad(c, kCell);
  out << '\n';
  for (std::size_t i = 0; i < m.columns.size(); ++i) {
    out << pad(m.columns[i], label_width);
    for (std::size_t j = 0; j <= i; ++j) {
      std::string cell;
      if (i == j) {
        cell = "1";
      } else if (const auto& c = m.cells[i][j]; c) {
        cell = Fixed3(c->r);
        if (IsBestCell(m, i, j, score)) cell += "*";
      } else {
        cell = "n/a";
      }
      out << pad(cell, kCell);
    }
    out << '\n';
  }
  if (m.best_column) {
    out << "\nbest measure vs " << *score << ": " << *m.best_column << '\n';
  }
  for (const auto& [name, why] : m.excluded) {
    out << "excluded " << name << ": " << why << '\n';
  }
  return out.str();
}

std::string FormatMatrixCsv(const CorrelationMatrix& m) {
  const auto& score = m.score_column;
  std::ostringstream out;
  out << "a,b,r,p_value,n,best\n";
  for (std::size_t i = 0; i < m.columns.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const auto& c = m.cells[i][j];
      out << m.columns[i] << ',' << m.columns[j] << ',';
      if (c) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%zu", c->r, c->p_value, c->n);
        out << buf;
      } else {
        out << ",,";
      }
      out << ',' << (IsBestCell(m, i, j, score) ? "1" : "0") << '\n';
    }
  }
  return out.str();
}

std::string FormatMatrixMarkdown(const CorrelationMatrix& m) {
  const auto& score = m.score_column;
  std::ostringstream out;
  out << "| |";
  for (const auto& c : m.columns) out << ' ' << c << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < m.columns.size(); ++i) out << "---|";
  out << '\n';
  for (std::size_t i = 0; i < m.columns.size(); ++i) {
    out << "| " << m.columns[i] << " |";
    for (std::size_t j = 0; j < m.columns.size(); ++j) {
      std::string cell;
      if (j == i) {
        cell = "1";
      } else if (j < i) {
        const auto& c = m.cells[i][j];
        cell = c ? Fixed3(c->r) : "n/a";
        if (c && IsBestCell(m, i, j, score)) cell = "**" + cell + "**";
      }
      out << ' ' << cell << " |";
    }
    out << '\n';
  }
  if (m.best_column) {
    const auto c = m.At(*m.best_column, *score);
    out << "\nBest measure vs " << *score << ": **" << *m.best_column
        << "** (r = " << Fixed3(c->r) << ", p = " << Sci(c->p_value)
        << ", n = " << c->n << ")\n";
  }
  for (const auto& [name, why] : m.excluded) {
    out << "\nExcluded " << name << ": " << why << '\n';
  }
  return out.str();
}

}  // namespace aesthia
