#include "ahpfse/fuzzy.hpp"

#include "ahpfse/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace ahpfse {

LevelScale::LevelScale(std::vector<std::string> labels, std::vector<double> scores)
    : labels_(std::move(labels)), scores_(std::move(scores)) {
  if (labels_.size() != scores_.size()) {
    throw ValidationError(fmt::format("level scale has {} labels but {} scores", labels_.size(), scores_.size()));
  }
  if (labels_.size() < 2) throw ValidationError("level scale needs at least 2 grades");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw ValidationError(fmt::format("duplicate grade label '{}'", l));
  }
  for (std::size_t k = 0; k < scores_.size(); ++k) {
    if (!std::isfinite(scores_[k])) throw ValidationError("level scores must be finite");
    if (k > 0 && !(scores_[k] < scores_[k - 1])) {
      throw ValidationError(fmt::format("level scores must strictly decrease ('{}' = {} after {})", labels_[k],
                                        scores_[k], scores_[k - 1]));
    }
  }
}

const LevelScale& LevelScale::standard() {
  static const LevelScale scale({"Excellent", "Good", "Moderate", "Pass", "Fail"}, {100, 80, 60, 40, 20});
  return scale;
}

std::size_t LevelScale::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw DomainError(fmt::format("unknown grade '{}'", label));
  return static_cast<std::size_t>(it - labels_.begin());
}

double FuzzyRelationMatrix::row_mass(std::size_t i) const {
  return std::accumulate(rows.at(i).begin(), rows.at(i).end(), 0.0);
}

double MembershipVector::mass() const { return std::accumulate(values.begin(), values.end(), 0.0); }

ValidationResult validate_relation_matrix(const FuzzyRelationMatrix& r, const RelationCheckOptions& options) {
  ValidationResult result;
  if (r.criteria.empty() || r.rows.size() != r.criteria.size()) {
    result.violations.push_back({ViolationKind::DimensionMismatch, 0, 0, static_cast<double>(r.rows.size()),
                                 fmt::format("{} criteria but {} rows", r.criteria.size(), r.rows.size())});
    return result;
  }
  const std::size_t m = r.level_count();
  if (m == 0) {
    result.violations.push_back({ViolationKind::DimensionMismatch, 0, 0, 0.0, "relation matrix has no levels"});
    return result;
  }
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    if (row.size() != m) {
      result.violations.push_back({ViolationKind::DimensionMismatch, i, 0, static_cast<double>(row.size()),
                                   fmt::format("row {} has {} levels, expected {}", i + 1, row.size(), m)});
      continue;
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (!(row[j] >= 0.0 && row[j] <= 1.0)) {
        result.violations.push_back({ViolationKind::EntryOutOfRange, i, j, row[j],
                                     fmt::format("entry ({},{}) = {} outside [0,1]", i + 1, j + 1, row[j])});
      }
    }
    const double mass = r.row_mass(i);
    const double deviation = std::abs(mass - 1.0);
    if (deviation <= kStrictMassTolerance) continue;
    const double allowed = options.strict ? kStrictMassTolerance : options.mass_tolerance;
    Violation v{deviation > allowed ? ViolationKind::RowMassViolation : ViolationKind::RowMassDeviation, i, 0, mass,
                fmt::format("row {} ({}) mass {:.6g}", i + 1, r.criteria[i], mass)};
    (deviation > allowed ? result.violations : result.warnings).push_back(std::move(v));
  }
  return result;
}

FuzzyRelationMatrix renormalize_rows(const FuzzyRelationMatrix& r) {
  FuzzyRelationMatrix out = r;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    const double mass = out.row_mass(i);
    if (mass > 0.0) {
      for (double& v : out.rows[i]) v /= mass;
    }
  }
  return out;
}

MembershipVector synthesize(std::span<const double> weights, const FuzzyRelationMatrix& r) {
  if (weights.size() != r.rows.size()) {
    throw DomainError(fmt::format("{} weights for a relation matrix with {} criteria", weights.size(), r.rows.size()));
  }
  const std::size_t m = r.level_count();
  MembershipVector b{std::vector<double>(m, 0.0)};
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (r.rows[i].size() != m) throw DomainError(fmt::format("relation row {} is ragged", i + 1));
    for (std::size_t j = 0; j < m; ++j) b.values[j] += weights[i] * r.rows[i][j];
  }
  return b;
}

MembershipVector synthesize(const WeightVector& weights, const FuzzyRelationMatrix& r) {
  if (weights.labels() != r.criteria) {
    throw DomainError("weight vector and relation matrix disagree on criterion order");
  }
  return synthesize(std::span<const double>(weights.values()), r);
}

Classification classify_max_membership(const MembershipVector& b, const LevelScale& scale) {
  if (b.values.empty()) throw DomainError("cannot classify an empty membership vector");
  if (b.values.size() != scale.size()) {
    throw DomainError(fmt::format("membership has {} levels, scale has {}", b.values.size(), scale.size()));
  }
  const double top = *std::max_element(b.values.begin(), b.values.end());
  std::size_t winner = b.values.size();
  std::size_t contenders = 0;
  for (std::size_t k = 0; k < b.values.size(); ++k) {
    if (b.values[k] >= top - kTieTolerance) {
      if (winner == b.values.size()) winner = k;
      ++contenders;
    }
  }
  return Classification{scale.labels()[winner], winner, contenders > 1};
}

double score(const MembershipVector& b, const LevelScale& scale) {
  if (b.values.size() != scale.size()) {
    throw DomainError(fmt::format("membership has {} levels, scale has {}", b.values.size(), scale.size()));
  }
  return std::inner_product(b.values.begin(), b.values.end(), scale.scores().begin(), 0.0);
}

EvaluationOutcome evaluate(std::span<const double> weights, const FuzzyRelationMatrix& r, const LevelScale& scale) {
  EvaluationOutcome out;
  out.membership = synthesize(weights, r);
  auto cls = classify_max_membership(out.membership, scale);
  out.grade = std::move(cls.grade);
  out.grade_index = cls.grade_index;
  out.tie = cls.tie;
  out.score = score(out.membership, scale);
  return out;
}

}  // namespace ahpfse
