#pragma once

#include "ahpfse/scenario.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ahpfse {

/// Value-to-value substitution table for judgment requantization.
class ScaleRemap {
 public:
  ScaleRemap() = default;
  explicit ScaleRemap(std::vector<std::pair<Judgment, Judgment>> entries);

  /// Odd ratios move up to the neighbouring even one (3->4, 5->6, 7->8) and 9,
  /// having no admissible upper neighbour, moves to 8. Reciprocals follow
  /// (1/3 -> 1/4, ...). Evens and 1 are fixed.
  static ScaleRemap upward();
  /// Odd ratios move down to the even neighbour (3->2, 5->4, 7->6, 9->8).
  static ScaleRemap downward();
  /// Every ladder value maps to itself.
  static ScaleRemap identity();

  std::optional<Judgment> lookup(const Judgment& from) const;
  const std::vector<std::pair<Judgment, Judgment>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<Judgment, Judgment>> entries_;
};

struct EntryEdit {
  std::string period;
  std::size_t row = 0;  // 0-based
  std::size_t col = 0;
  Judgment value;
};

struct ScaleRequantize {
  std::string period;  // empty: every period
  ScaleRemap remap;
  std::string remap_name;  // "upward", "downward", "identity" or "custom"
};

struct MatrixReplace {
  std::string period;
  JudgmentMatrix matrix;
};

struct CriterionAdd {
  Criterion criterion;
  std::size_t position = 0;
  /// Per period: judgment of the new criterion against each existing one.
  std::map<std::string, std::vector<Judgment>> judgments;
  /// Per alternative: the new criterion's membership row.
  std::map<std::string, std::vector<double>> relation_rows;
};

struct CriterionRemove {
  std::string criterion;
};

using PerturbationPayload = std::variant<EntryEdit, ScaleRequantize, MatrixReplace, CriterionAdd, CriterionRemove>;

struct Perturbation {
  std::string label;
  PerturbationPayload payload;
};

/// "entry_edit", "scale_requantize", "matrix_replace", "criterion_add", "criterion_remove".
std::string_view kind_name(const Perturbation& p);

struct CriterionDelta {
  std::string criterion;
  double baseline = 0.0;
  double perturbed = 0.0;
  double relative = 0.0;  // |perturbed - baseline| / baseline
};

struct PeriodSensitivity {
  std::string period_id;
  WeightVector baseline_weights;
  WeightVector perturbed_weights;
  ConsistencyReport baseline_consistency;
  ConsistencyReport perturbed_consistency;
  /// Over criteria present in both weight vectors, in baseline order.
  std::vector<CriterionDelta> deltas;
  double max_relative_delta = 0.0;
  std::optional<RankingResult> baseline_ranking;
  std::optional<RankingResult> perturbed_ranking;
  bool rank_changed = false;
  bool selection_changed = false;
  std::size_t kendall_tau = 0;
};

struct SensitivityReport {
  std::string label;
  std::string kind;
  std::vector<PeriodSensitivity> periods;
  double max_relative_delta = 0.0;
  bool rank_changed = false;
  bool selection_changed = false;
  std::string error;  // non-empty when the perturbation could not be applied

  bool ok() const { return error.empty(); }
  bool within(double bound) const { return ok() && max_relative_delta <= bound; }
};

struct SuiteSummary {
  std::size_t reports = 0;
  std::size_t errors = 0;
  std::size_t rank_changes = 0;
  double max_relative_delta = 0.0;
};

inline constexpr double kPublishedWeightShiftBound = 0.15;

/// (i,j) := value and (j,i) := 1/value; the input is untouched. Throws
/// DomainError on a diagonal cell, and on an off-scale value when strict.
JudgmentMatrix perturb_entry(const JudgmentMatrix& m, std::size_t row, std::size_t col, const Judgment& value,
                             bool strict_scale = true);

/// Remaps the strict upper triangle and rebuilds the lower triangle as
/// reciprocals. Throws DomainError when the table misses a value, maps 1 to
/// anything else, or yields a non-positive value.
JudgmentMatrix requantize_scale(const JudgmentMatrix& m, const ScaleRemap& remap);

/// Adds or removes a criterion across every matrix of the scenario and
/// re-derives the weights. Throws DomainError for an incomplete payload or a
/// removal that would leave fewer than 2 criteria.
Scenario apply_criterion_change(const Scenario& scenario, const Perturbation& change);

/// Any perturbation kind; returns a new scenario.
Scenario apply_perturbation(const Scenario& scenario, const Perturbation& perturbation);

/// Compares the baseline with the perturbed scenario, period by period.
/// Never throws for a bad perturbation; the report carries the error instead.
SensitivityReport analyze(const Scenario& baseline, const Perturbation& perturbation);

/// One report per perturbation, in input order. Items run concurrently.
std::vector<SensitivityReport> run_suite(const Scenario& baseline, std::span<const Perturbation> perturbations);

SuiteSummary summarize(std::span<const SensitivityReport> reports);

/// Every upper-triangle cell of the period's matrix moved one step up and one
/// step down the 1/9..9 ladder (steps that would leave the ladder are skipped;
/// off-ladder cells are skipped).
std::vector<Perturbation> single_step_suite(const Scenario& scenario, std::string_view period_id);

/// One requantization per period with the given table.
std::vector<Perturbation> requantization_suite(const Scenario& scenario, const ScaleRemap& remap,
                                               std::string_view remap_name);

/// Single-step edits for every period, the upward requantization per period,
/// and the downward table as a reported, non-default variant.
std::vector<Perturbation> standard_suite(const Scenario& scenario);

}  // namespace ahpfse
