#pragma once

#include "ahpfse/ahp.hpp"
#include "ahpfse/validation.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ahpfse {

/// Ordered grades (best first) with their numeric scores.
class LevelScale {
 public:
  /// Throws ValidationError unless labels are distinct, scores strictly
  /// decreasing, lengths equal and at least 2.
  LevelScale(std::vector<std::string> labels, std::vector<double> scores);

  /// Excellent/Good/Moderate/Pass/Fail scored 100/80/60/40/20.
  static const LevelScale& standard();

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& scores() const { return scores_; }
  double best_score() const { return scores_.front(); }
  double worst_score() const { return scores_.back(); }
  /// Throws DomainError for an unknown label.
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const LevelScale&, const LevelScale&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> scores_;
};

/// Membership of each criterion across the grade levels of one alternative.
struct FuzzyRelationMatrix {
  std::vector<std::string> criteria;
  std::vector<std::vector<double>> rows;  // criteria.size() x level count

  std::size_t criterion_count() const { return criteria.size(); }
  std::size_t level_count() const { return rows.empty() ? 0 : rows.front().size(); }
  double row_mass(std::size_t i) const;

  friend bool operator==(const FuzzyRelationMatrix&, const FuzzyRelationMatrix&) = default;
};

struct RelationCheckOptions {
  bool strict = false;
  /// Allowed |row mass - 1| outside strict mode.
  double mass_tolerance = 0.11;
};

/// Graded membership B after weighting.
struct MembershipVector {
  std::vector<double> values;

  double mass() const;
  friend bool operator==(const MembershipVector&, const MembershipVector&) = default;
};

struct Classification {
  std::string grade;
  std::size_t grade_index = 0;
  bool tie = false;
};

struct EvaluationOutcome {
  MembershipVector membership;
  std::string grade;
  std::size_t grade_index = 0;
  bool tie = false;
  double score = 0.0;
};

inline constexpr double kStrictMassTolerance = 1e-9;
inline constexpr double kTieTolerance = 1e-9;

/// Entry range [0,1] plus per-row mass. Rows off by more than 1e-9 but within
/// tolerance are reported as warnings; beyond tolerance (or any deviation in
/// strict mode) as violations.
ValidationResult validate_relation_matrix(const FuzzyRelationMatrix& r, const RelationCheckOptions& options = {});

/// Rescales every row with positive mass to sum to 1.
FuzzyRelationMatrix renormalize_rows(const FuzzyRelationMatrix& r);

/// B[j] = sum_i q[i] * r[i][j]. Weights need not be normalized; no clamping.
MembershipVector synthesize(std::span<const double> weights, const FuzzyRelationMatrix& r);

/// Same, with criterion labels checked for identical order.
MembershipVector synthesize(const WeightVector& weights, const FuzzyRelationMatrix& r);

/// Maximum-membership grade. The winner is the best grade whose membership is
/// within 1e-9 of the maximum; `tie` is set when more than one grade qualifies.
Classification classify_max_membership(const MembershipVector& b, const LevelScale& scale);

/// Dot product of the scale scores with B, without mass normalization.
double score(const MembershipVector& b, const LevelScale& scale);

/// synthesize + classify + score.
EvaluationOutcome evaluate(std::span<const double> weights, const FuzzyRelationMatrix& r, const LevelScale& scale);

}  // namespace ahpfse
