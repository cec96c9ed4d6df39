#pragma once

#include "ahpfse/ahp.hpp"
#include "ahpfse/error.hpp"
#include "ahpfse/fuzzy.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ahpfse {

struct Criterion {
  std::string id;
  std::string name;

  friend bool operator==(const Criterion&, const Criterion&) = default;
};

/// How a ranking turns into a list of selected alternatives.
struct SelectionPolicy {
  enum class Kind { All, TopK, ScoreThreshold, GradeAtLeast };

  Kind kind = Kind::All;
  int k = 0;
  double threshold = 0.0;
  std::string grade;

  static SelectionPolicy all() { return {}; }
  static SelectionPolicy top_k(int k) { return {Kind::TopK, k, 0.0, {}}; }
  static SelectionPolicy score_threshold(double t) { return {Kind::ScoreThreshold, 0, t, {}}; }
  static SelectionPolicy grade_at_least(std::string g) { return {Kind::GradeAtLeast, 0, 0.0, std::move(g)}; }

  /// Throws DomainError for k <= 0, a threshold outside the scale's score
  /// range, or an unknown grade.
  void validate(const LevelScale& scale) const;

  friend bool operator==(const SelectionPolicy&, const SelectionPolicy&) = default;
};

std::string_view to_string(SelectionPolicy::Kind kind);

/// Something to evaluate: a transport category, or a tool inside one when
/// `parent` names its category alternative.
struct Alternative {
  std::string id;
  std::string name;
  std::string category;
  std::string parent;
  FuzzyRelationMatrix relation;
  std::map<std::string, std::string> metadata;  // informational only

  friend bool operator==(const Alternative&, const Alternative&) = default;
};

/// A rescue period bound to its judgment matrix. Weights and consistency are
/// derived at construction; the only way to change the matrix is with_matrix(),
/// which derives them again.
class PeriodProfile {
 public:
  static PeriodProfile create(std::string id, JudgmentMatrix matrix, SelectionPolicy policy,
                              const RandomIndexTable& ri = RandomIndexTable::defaults(),
                              double threshold = kDefaultCrThreshold);

  const std::string& id() const { return id_; }
  const JudgmentMatrix& matrix() const { return matrix_; }
  const SelectionPolicy& policy() const { return policy_; }
  const WeightVector& weights() const { return derived_.weights; }
  const ConsistencyReport& consistency() const { return derived_.consistency; }

  PeriodProfile with_matrix(JudgmentMatrix matrix, const RandomIndexTable& ri, double threshold) const;

 private:
  PeriodProfile() = default;
  std::string id_;
  JudgmentMatrix matrix_;
  SelectionPolicy policy_;
  DerivedWeights derived_;
};

struct RankedAlternative {
  std::string id;
  EvaluationOutcome outcome;
};

struct RankingResult {
  std::string period_id;
  std::vector<RankedAlternative> entries;  // score descending, then id ascending
  std::vector<std::string> selection;

  std::vector<std::string> order() const;
};

struct TwoLayerResult {
  RankingResult categories;
  std::map<std::string, RankingResult> tools;  // keyed by category alternative id
  std::vector<std::string> selection;
};

struct PeriodSpec {
  std::string id;
  JudgmentMatrix judgments;
  SelectionPolicy policy;

  friend bool operator==(const PeriodSpec&, const PeriodSpec&) = default;
};

/// Everything a scenario file carries. Matrix labels are criterion ids.
struct ScenarioDocument {
  std::string format_version = "1";
  std::vector<Criterion> criteria;
  LevelScale levels = LevelScale::standard();
  std::vector<PeriodSpec> periods;
  std::vector<Alternative> alternatives;
  std::optional<RandomIndexTable> random_index;
  double consistency_threshold = kDefaultCrThreshold;
  std::map<std::string, std::string> annotations;

  friend bool operator==(const ScenarioDocument&, const ScenarioDocument&) = default;
};

struct ScenarioCheckOptions {
  bool strict_scale = false;
  RelationCheckOptions relation;
};

/// Semantic checks over a document; empty when it is valid.
std::vector<Issue> check_scenario(const ScenarioDocument& doc, const ScenarioCheckOptions& options = {});

/// A validated document plus derived period weights. Immutable.
class Scenario {
 public:
  /// Throws DocumentError listing every issue from check_scenario().
  explicit Scenario(ScenarioDocument doc, const ScenarioCheckOptions& options = {});

  const ScenarioDocument& document() const { return doc_; }
  const std::vector<Criterion>& criteria() const { return doc_.criteria; }
  const LevelScale& scale() const { return doc_.levels; }
  const std::vector<PeriodProfile>& periods() const { return periods_; }
  const std::vector<Alternative>& alternatives() const { return doc_.alternatives; }
  const RandomIndexTable& ri_table() const;
  double cr_threshold() const { return doc_.consistency_threshold; }

  /// Throws DomainError for an unknown id.
  const PeriodProfile& period(std::string_view id) const;
  const Alternative& alternative(std::string_view id) const;

  /// Alternatives without a parent, in document order.
  std::vector<Alternative> categories() const;
  /// Tool-level alternatives grouped by parent id.
  std::map<std::string, std::vector<Alternative>> tools_by_category() const;

  /// rank_period over the top-level alternatives.
  RankingResult rank(std::string_view period_id) const;

  /// Copy with one period's matrix replaced; weights are re-derived.
  Scenario with_period_matrix(std::string_view period_id, JudgmentMatrix matrix) const;

 private:
  ScenarioDocument doc_;
  std::vector<PeriodProfile> periods_;
};

/// outcome = classify + score of synthesize(period weights, alternative R).
EvaluationOutcome evaluate_alternative(const PeriodProfile& period, const Alternative& alt, const LevelScale& scale);

/// Deterministic ranking; selection follows the period's policy. Throws
/// DomainError on an empty list.
RankingResult rank_period(const PeriodProfile& period, std::span<const Alternative> alternatives,
                          const LevelScale& scale);

/// Applies `policy` to a ranking, preserving ranking order.
std::vector<std::string> select_tools(const RankingResult& ranking, const SelectionPolicy& policy,
                                      const LevelScale& scale);

/// Ranks categories, then the tools inside each category that has any. The
/// flattened selection walks selected categories in rank order and expands
/// each into its selected tools (a category without tools stands for itself).
TwoLayerResult evaluate_two_layer(const PeriodProfile& period, std::span<const Alternative> categories,
                                  const std::map<std::string, std::vector<Alternative>>& tools_by_category,
                                  const LevelScale& scale);

/// Number of discordant pairs between two orderings of the same ids.
std::size_t kendall_tau_distance(std::span<const std::string> a, std::span<const std::string> b);

}  // namespace ahpfse
