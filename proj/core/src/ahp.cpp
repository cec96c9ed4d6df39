#include "ahpfse/ahp.hpp"

#include "ahpfse/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ahpfse {

// ---------------------------------------------------------------------------
// JudgmentMatrix

JudgmentMatrix::JudgmentMatrix(std::vector<std::string> labels, std::vector<std::vector<Judgment>> rows)
    : labels_(std::move(labels)), rows_(std::move(rows)) {}

JudgmentMatrix JudgmentMatrix::from_upper_triangle(std::vector<std::string> labels,
                                                   std::span<const Judgment> upper) {
  const std::size_t n = labels.size();
  if (upper.size() != n * (n - 1) / 2) {
    throw DomainError(fmt::format("upper triangle of order {} needs {} values, got {}", n,
                                  n * (n - 1) / 2, upper.size()));
  }
  std::vector<std::vector<Judgment>> rows(n, std::vector<Judgment>(n));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      rows[i][j] = upper[k];
      rows[j][i] = upper[k].reciprocal();
      ++k;
    }
  }
  return JudgmentMatrix(std::move(labels), std::move(rows));
}

JudgmentMatrix JudgmentMatrix::from_weights(std::vector<std::string> labels, std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (labels.size() != n) throw DomainError("label count does not match weight count");
  std::vector<std::vector<Judgment>> rows(n, std::vector<Judgment>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) rows[i][j] = Judgment::real(weights[i] / weights[j]);
    }
  }
  return JudgmentMatrix(std::move(labels), std::move(rows));
}

std::vector<double> JudgmentMatrix::dense() const {
  const std::size_t n = order();
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = rows_[i][j].value();
  }
  return out;
}

JudgmentMatrix JudgmentMatrix::with_entry(std::size_t i, std::size_t j, const Judgment& value) const {
  if (i >= order() || j >= order()) {
    throw DomainError(fmt::format("cell ({},{}) outside a {}x{} matrix", i + 1, j + 1, order(), order()));
  }
  if (i == j) throw DomainError(fmt::format("diagonal cell ({},{}) is fixed at 1", i + 1, j + 1));
  if (value.value() <= 0.0) throw DomainError("judgment values must be positive");
  JudgmentMatrix out = *this;
  out.rows_[i][j] = value;
  out.rows_[j][i] = value.reciprocal();
  return out;
}

JudgmentMatrix JudgmentMatrix::permuted(std::span<const std::size_t> perm) const {
  const std::size_t n = order();
  if (perm.size() != n) throw DomainError("permutation size does not match matrix order");
  std::vector<std::string> labels(n);
  std::vector<std::vector<Judgment>> rows(n, std::vector<Judgment>(n));
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = labels_.at(perm[a]);
    for (std::size_t b = 0; b < n; ++b) rows[a][b] = rows_.at(perm[a]).at(perm[b]);
  }
  return JudgmentMatrix(std::move(labels), std::move(rows));
}

JudgmentMatrix JudgmentMatrix::without(std::size_t index) const {
  if (index >= order()) throw DomainError(fmt::format("criterion index {} out of range", index + 1));
  JudgmentMatrix out = *this;
  out.labels_.erase(out.labels_.begin() + static_cast<std::ptrdiff_t>(index));
  out.rows_.erase(out.rows_.begin() + static_cast<std::ptrdiff_t>(index));
  for (auto& row : out.rows_) row.erase(row.begin() + static_cast<std::ptrdiff_t>(index));
  return out;
}

JudgmentMatrix JudgmentMatrix::with_inserted(std::size_t position, std::string label,
                                             std::span<const Judgment> versus_existing) const {
  const std::size_t n = order();
  if (position > n) throw DomainError(fmt::format("insert position {} beyond order {}", position, n));
  if (versus_existing.size() != n) {
    throw DomainError(fmt::format("new criterion needs {} judgments, got {}", n, versus_existing.size()));
  }
  JudgmentMatrix out = *this;
  const auto pos = static_cast<std::ptrdiff_t>(position);
  for (std::size_t k = 0; k < n; ++k) {
    out.rows_[k].insert(out.rows_[k].begin() + pos, versus_existing[k].reciprocal());
  }
  std::vector<Judgment> row(versus_existing.begin(), versus_existing.end());
  row.insert(row.begin() + pos, Judgment());
  out.rows_.insert(out.rows_.begin() + pos, std::move(row));
  out.labels_.insert(out.labels_.begin() + pos, std::move(label));
  return out;
}

// ---------------------------------------------------------------------------
// WeightVector

WeightVector::WeightVector(std::vector<std::string> labels, std::vector<double> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
  if (labels_.size() != weights_.size()) {
    throw ValidationError(fmt::format("weight vector has {} labels but {} weights", labels_.size(),
                                      weights_.size()));
  }
  if (weights_.empty()) throw ValidationError("weight vector is empty");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0)) {
      throw ValidationError(fmt::format("weight '{}' = {} is not strictly positive", labels_[i], weights_[i]));
    }
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError(fmt::format("weights sum to {}, not 1", total));
}

double WeightVector::at(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return weights_[i];
  }
  throw DomainError(fmt::format("no weight for criterion '{}'", label));
}

// ---------------------------------------------------------------------------
// RandomIndexTable

RandomIndexTable::RandomIndexTable(std::map<std::size_t, double> values) : values_(std::move(values)) {
  double previous = 0.0;
  for (const auto& [n, ri] : values_) {
    if (n == 0) throw ValidationError("random index table cannot contain order 0");
    if (!(ri >= 0.0)) throw ValidationError(fmt::format("RI({}) = {} is negative", n, ri));
    if (n <= 2 && ri != 0.0) throw ValidationError(fmt::format("RI({}) must be 0", n));
    if (ri < previous) throw ValidationError(fmt::format("RI({}) = {} decreases", n, ri));
    previous = ri;
  }
}

const RandomIndexTable& RandomIndexTable::defaults() {
  static const RandomIndexTable table({{1, 0.0},
                                       {2, 0.0},
                                       {3, 0.58},
                                       {4, 0.90},
                                       {5, 1.12},
                                       {6, 1.26},
                                       {7, 1.36},
                                       {8, 1.41},
                                       {9, 1.46},
                                       {10, 1.49}});
  return table;
}

const RandomIndexTable& RandomIndexTable::saaty_classic() {
  static const RandomIndexTable table({{1, 0.0},
                                       {2, 0.0},
                                       {3, 0.58},
                                       {4, 0.90},
                                       {5, 1.12},
                                       {6, 1.24},
                                       {7, 1.32},
                                       {8, 1.41},
                                       {9, 1.45},
                                       {10, 1.49}});
  return table;
}

double RandomIndexTable::at(std::size_t n) const {
  auto it = values_.find(n);
  if (it == values_.end()) throw DomainError(fmt::format("no random index for matrix order {}", n));
  return it->second;
}

// ---------------------------------------------------------------------------
// Operations

ValidationResult validate_judgment_matrix(const JudgmentMatrix& m, bool strict_scale) {
  ValidationResult result;
  const std::size_t n = m.order();
  const auto& rows = m.rows();

  if (n < 2) {
    result.violations.push_back({ViolationKind::DimensionMismatch, 0, 0, static_cast<double>(n),
                                 fmt::format("matrix order {} is below 2", n)});
  }
  if (rows.size() != n) {
    result.violations.push_back({ViolationKind::DimensionMismatch, 0, 0, static_cast<double>(rows.size()),
                                 fmt::format("{} labels but {} rows", n, rows.size())});
    return result;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      result.violations.push_back({ViolationKind::DimensionMismatch, i, 0, static_cast<double>(rows[i].size()),
                                   fmt::format("row {} has {} entries, expected {}", i + 1, rows[i].size(), n)});
    }
  }
  if (!result.ok()) return result;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Judgment& a = rows[i][j];
      if (!(a.value() > 0.0)) {
        result.violations.push_back({ViolationKind::NonPositiveEntry, i, j, a.value(),
                                     fmt::format("entry ({},{}) = {} is not positive", i + 1, j + 1, a.to_string())});
        continue;
      }
      if (i == j) {
        if (!(a == Judgment())) {
          result.violations.push_back({ViolationKind::DiagonalNotOne, i, j, a.value(),
                                       fmt::format("diagonal entry ({},{}) = {} is not 1", i + 1, j + 1, a.to_string())});
        }
        continue;
      }
      if (strict_scale && !is_saaty_value(a)) {
        result.violations.push_back({ViolationKind::OffScaleValue, i, j, a.value(),
                                     fmt::format("entry ({},{}) = {} is not on the 1/9..9 scale", i + 1, j + 1,
                                                 a.to_string())});
      }
    }
  }
  // Reciprocity is reported once per pair, at the lower cell.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Judgment& lower = rows[i][j];
      const Judgment& upper = rows[j][i];
      if (lower.value() > 0.0 && upper.value() > 0.0 && !are_reciprocal(lower, upper)) {
        result.violations.push_back(
            {ViolationKind::ReciprocityViolation, i, j, lower.value() * upper.value(),
             fmt::format("reciprocity violation at ({},{}): {} x {} != 1", i + 1, j + 1, lower.to_string(),
                         upper.to_string())});
      }
    }
  }
  return result;
}

namespace {

void require_valid(const JudgmentMatrix& m) {
  auto check = validate_judgment_matrix(m, false);
  if (!check.ok()) throw ValidationError("invalid judgment matrix: " + check.summary());
}

void multiply(const std::vector<double>& a, std::size_t n, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += a[i * n + j] * x[j];
    y[i] = acc;
  }
}

}  // namespace

EigenPair principal_eigenpair(const JudgmentMatrix& m, const PowerIterationOptions& options) {
  if (!(options.tolerance > 0.0)) throw DomainError("power iteration tolerance must be positive");
  require_valid(m);

  const std::size_t n = m.order();
  const std::vector<double> a = m.dense();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> y(n);

  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    multiply(a, n, x, y);
    const double mass = std::accumulate(y.begin(), y.end(), 0.0);
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= mass;
      delta = std::max(delta, std::abs(y[i] - x[i]));
    }
    x.swap(y);
    if (delta < options.tolerance) {
      // x sums to 1, so sum(A x) is the Rayleigh-style eigenvalue estimate.
      multiply(a, n, x, y);
      const double lambda = std::accumulate(y.begin(), y.end(), 0.0);
      return EigenPair{lambda, std::move(x), it};
    }
  }
  throw ConvergenceError(fmt::format("power iteration did not converge in {} iterations (tolerance {})",
                                     options.max_iterations, options.tolerance));
}

ConsistencyReport consistency_from_lambda(double lambda_max, std::size_t n, const RandomIndexTable& ri,
                                          double threshold) {
  ConsistencyReport report;
  report.lambda_max = lambda_max;
  report.threshold = threshold;
  report.ri = ri.at(n);
  report.ci = n > 1 ? (lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1) : 0.0;
  report.cr = (n > 2 && report.ri > 0.0) ? report.ci / report.ri : 0.0;
  report.acceptable = report.cr <= threshold;
  return report;
}

ConsistencyReport consistency_check(const JudgmentMatrix& m, const RandomIndexTable& ri, double threshold) {
  if (!ri.contains(m.order())) throw DomainError(fmt::format("no random index for matrix order {}", m.order()));
  const EigenPair pair = principal_eigenpair(m);
  return consistency_from_lambda(pair.lambda_max, m.order(), ri, threshold);
}

DerivedWeights derive_weights(const JudgmentMatrix& m, const RandomIndexTable& ri, double threshold) {
  if (!ri.contains(m.order())) throw DomainError(fmt::format("no random index for matrix order {}", m.order()));
  EigenPair pair = principal_eigenpair(m);
  // Power iteration keeps the iterate normalized; renormalize once more so the
  // sum is 1 to rounding.
  const double total = std::accumulate(pair.vector.begin(), pair.vector.end(), 0.0);
  for (double& w : pair.vector) w /= total;
  return DerivedWeights{WeightVector(m.labels(), std::move(pair.vector)),
                        consistency_from_lambda(pair.lambda_max, m.order(), ri, threshold)};
}

}  // namespace ahpfse
