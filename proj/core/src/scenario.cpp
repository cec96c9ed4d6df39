#include "ahpfse/scenario.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>
#include <unordered_map>

namespace ahpfse {
namespace {

std::string join_issues(const std::vector<Issue>& issues) {
  std::string out = "scenario document rejected";
  for (const auto& issue : issues) {
    out += fmt::format("\n  {}: {}", issue.path.empty() ? "/" : issue.path, issue.message);
  }
  return out;
}

std::vector<std::string> criterion_ids(const std::vector<Criterion>& criteria) {
  std::vector<std::string> ids;
  ids.reserve(criteria.size());
  for (const auto& c : criteria) ids.push_back(c.id);
  return ids;
}

}  // namespace

DocumentError::DocumentError(std::vector<Issue> issues)
    : ValidationError(join_issues(issues)), issues_(std::move(issues)) {}

std::string_view to_string(SelectionPolicy::Kind kind) {
  switch (kind) {
    case SelectionPolicy::Kind::All: return "all";
    case SelectionPolicy::Kind::TopK: return "top_k";
    case SelectionPolicy::Kind::ScoreThreshold: return "score_threshold";
    case SelectionPolicy::Kind::GradeAtLeast: return "grade_at_least";
  }
  return "unknown";
}

void SelectionPolicy::validate(const LevelScale& scale) const {
  switch (kind) {
    case Kind::All: return;
    case Kind::TopK:
      if (k <= 0) throw DomainError(fmt::format("top_k needs k > 0, got {}", k));
      return;
    case Kind::ScoreThreshold:
      if (!(threshold >= scale.worst_score() && threshold <= scale.best_score())) {
        throw DomainError(fmt::format("score threshold {} outside the scale range [{}, {}]", threshold,
                                      scale.worst_score(), scale.best_score()));
      }
      return;
    case Kind::GradeAtLeast:
      (void)scale.index_of(grade);
      return;
  }
}

// ---------------------------------------------------------------------------
// PeriodProfile

PeriodProfile PeriodProfile::create(std::string id, JudgmentMatrix matrix, SelectionPolicy policy,
                                    const RandomIndexTable& ri, double threshold) {
  PeriodProfile p;
  p.id_ = std::move(id);
  p.derived_ = derive_weights(matrix, ri, threshold);
  p.matrix_ = std::move(matrix);
  p.policy_ = std::move(policy);
  return p;
}

PeriodProfile PeriodProfile::with_matrix(JudgmentMatrix matrix, const RandomIndexTable& ri, double threshold) const {
  return create(id_, std::move(matrix), policy_, ri, threshold);
}

std::vector<std::string> RankingResult::order() const {
  std::vector<std::string> ids;
  ids.reserve(entries.size());
  for (const auto& e : entries) ids.push_back(e.id);
  return ids;
}

// ---------------------------------------------------------------------------
// Scenario validation

std::vector<Issue> check_scenario(const ScenarioDocument& doc, const ScenarioCheckOptions& options) {
  std::vector<Issue> issues;
  auto add = [&issues](std::string path, std::string message) {
    issues.push_back(Issue{std::move(path), std::move(message), 0});
  };

  if (doc.format_version != "1") add("/format_version", fmt::format("unsupported format version '{}'", doc.format_version));

  if (doc.criteria.size() < 2) add("/criteria", "at least 2 criteria are required");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc.criteria.size(); ++i) {
    if (doc.criteria[i].id.empty()) add(fmt::format("/criteria/{}/id", i), "criterion id is empty");
    if (!ids.insert(doc.criteria[i].id).second) {
      add(fmt::format("/criteria/{}/id", i), fmt::format("duplicate criterion id '{}'", doc.criteria[i].id));
    }
  }
  const auto labels = criterion_ids(doc.criteria);
  const std::size_t n = labels.size();

  if (doc.random_index && !doc.random_index->contains(n)) {
    add("/random_index", fmt::format("no random index for {} criteria", n));
  } else if (!doc.random_index && !RandomIndexTable::defaults().contains(n)) {
    add("/criteria", fmt::format("default random index table does not cover {} criteria", n));
  }
  if (!(doc.consistency_threshold > 0.0)) add("/consistency_threshold", "threshold must be positive");

  std::set<std::string> period_ids;
  for (std::size_t p = 0; p < doc.periods.size(); ++p) {
    const auto& period = doc.periods[p];
    const std::string base = fmt::format("/periods/{}", p);
    if (period.id.empty()) add(base + "/id", "period id is empty");
    if (!period_ids.insert(period.id).second) add(base + "/id", fmt::format("duplicate period id '{}'", period.id));
    if (period.judgments.labels() != labels) add(base + "/judgments", "matrix labels do not follow the criterion order");
    auto check = validate_judgment_matrix(period.judgments, options.strict_scale);
    for (const auto& v : check.violations) {
      std::string path = v.kind == ViolationKind::DimensionMismatch ? base + "/judgments"
                                                                    : fmt::format("{}/judgments/{}/{}", base, v.row, v.col);
      add(std::move(path), v.message);
    }
    try {
      period.policy.validate(doc.levels);
    } catch (const DomainError& e) {
      add(base + "/policy", e.what());
    }
  }

  std::set<std::string> alt_ids;
  for (const auto& alt : doc.alternatives) alt_ids.insert(alt.id);
  std::set<std::string> seen_alts;
  for (std::size_t a = 0; a < doc.alternatives.size(); ++a) {
    const auto& alt = doc.alternatives[a];
    const std::string base = fmt::format("/alternatives/{}", a);
    if (alt.id.empty()) add(base + "/id", "alternative id is empty");
    if (!seen_alts.insert(alt.id).second) add(base + "/id", fmt::format("duplicate alternative id '{}'", alt.id));
    if (!alt.parent.empty()) {
      auto it = std::find_if(doc.alternatives.begin(), doc.alternatives.end(),
                             [&](const Alternative& other) { return other.id == alt.parent; });
      if (it == doc.alternatives.end()) {
        add(base + "/parent", fmt::format("unknown parent '{}'", alt.parent));
      } else if (!it->parent.empty()) {
        add(base + "/parent", fmt::format("parent '{}' is itself a tool", alt.parent));
      }
    }
    if (alt.relation.criteria != labels) add(base + "/relation", "relation rows do not follow the criterion order");
    if (alt.relation.level_count() != doc.levels.size()) {
      add(base + "/relation",
          fmt::format("relation has {} levels, scale has {}", alt.relation.level_count(), doc.levels.size()));
    }
    auto check = validate_relation_matrix(alt.relation, options.relation);
    for (const auto& v : check.violations) {
      std::string path = v.kind == ViolationKind::EntryOutOfRange ? fmt::format("{}/relation/{}/{}", base, v.row, v.col)
                                                                  : fmt::format("{}/relation/{}", base, v.row);
      add(std::move(path), v.message);
    }
  }
  return issues;
}

// ---------------------------------------------------------------------------
// Scenario

Scenario::Scenario(ScenarioDocument doc, const ScenarioCheckOptions& options) : doc_(std::move(doc)) {
  auto issues = check_scenario(doc_, options);
  if (!issues.empty()) throw DocumentError(std::move(issues));
  periods_.reserve(doc_.periods.size());
  for (const auto& spec : doc_.periods) {
    periods_.push_back(PeriodProfile::create(spec.id, spec.judgments, spec.policy, ri_table(), cr_threshold()));
  }
}

const RandomIndexTable& Scenario::ri_table() const {
  return doc_.random_index ? *doc_.random_index : RandomIndexTable::defaults();
}

const PeriodProfile& Scenario::period(std::string_view id) const {
  for (const auto& p : periods_) {
    if (p.id() == id) return p;
  }
  throw DomainError(fmt::format("unknown period '{}'", id));
}

const Alternative& Scenario::alternative(std::string_view id) const {
  for (const auto& a : doc_.alternatives) {
    if (a.id == id) return a;
  }
  throw DomainError(fmt::format("unknown alternative '{}'", id));
}

std::vector<Alternative> Scenario::categories() const {
  std::vector<Alternative> out;
  for (const auto& a : doc_.alternatives) {
    if (a.parent.empty()) out.push_back(a);
  }
  return out;
}

std::map<std::string, std::vector<Alternative>> Scenario::tools_by_category() const {
  std::map<std::string, std::vector<Alternative>> out;
  for (const auto& a : doc_.alternatives) {
    if (!a.parent.empty()) out[a.parent].push_back(a);
  }
  return out;
}

RankingResult Scenario::rank(std::string_view period_id) const {
  const auto alts = categories();
  return rank_period(period(period_id), alts, scale());
}

Scenario Scenario::with_period_matrix(std::string_view period_id, JudgmentMatrix matrix) const {
  ScenarioDocument doc = doc_;
  auto it = std::find_if(doc.periods.begin(), doc.periods.end(), [&](const PeriodSpec& p) { return p.id == period_id; });
  if (it == doc.periods.end()) throw DomainError(fmt::format("unknown period '{}'", period_id));
  it->judgments = std::move(matrix);
  return Scenario(std::move(doc));
}

// ---------------------------------------------------------------------------
// Evaluation

EvaluationOutcome evaluate_alternative(const PeriodProfile& period, const Alternative& alt, const LevelScale& scale) {
  if (period.weights().labels() != alt.relation.criteria) {
    throw DomainError(fmt::format("alternative '{}' is not aligned with the criteria of period '{}'", alt.id,
                                  period.id()));
  }
  return evaluate(period.weights().values(), alt.relation, scale);
}

RankingResult rank_period(const PeriodProfile& period, std::span<const Alternative> alternatives,
                          const LevelScale& scale) {
  if (alternatives.empty()) throw DomainError(fmt::format("period '{}': nothing to rank", period.id()));
  RankingResult result;
  result.period_id = period.id();
  result.entries.reserve(alternatives.size());
  for (const auto& alt : alternatives) {
    result.entries.push_back(RankedAlternative{alt.id, evaluate_alternative(period, alt, scale)});
  }
  std::sort(result.entries.begin(), result.entries.end(), [](const RankedAlternative& a, const RankedAlternative& b) {
    if (a.outcome.score != b.outcome.score) return a.outcome.score > b.outcome.score;
    return a.id < b.id;
  });
  result.selection = select_tools(result, period.policy(), scale);
  return result;
}

std::vector<std::string> select_tools(const RankingResult& ranking, const SelectionPolicy& policy,
                                      const LevelScale& scale) {
  if (ranking.entries.empty()) throw DomainError("cannot select from an empty ranking");
  policy.validate(scale);
  std::vector<std::string> out;
  switch (policy.kind) {
    case SelectionPolicy::Kind::All:
      out = ranking.order();
      break;
    case SelectionPolicy::Kind::TopK: {
      const auto count = std::min(static_cast<std::size_t>(policy.k), ranking.entries.size());
      for (std::size_t i = 0; i < count; ++i) out.push_back(ranking.entries[i].id);
      break;
    }
    case SelectionPolicy::Kind::ScoreThreshold:
      for (const auto& e : ranking.entries) {
        if (e.outcome.score >= policy.threshold) out.push_back(e.id);
      }
      break;
    case SelectionPolicy::Kind::GradeAtLeast: {
      const std::size_t limit = scale.index_of(policy.grade);
      for (const auto& e : ranking.entries) {
        if (e.outcome.grade_index <= limit) out.push_back(e.id);
      }
      break;
    }
  }
  return out;
}

TwoLayerResult evaluate_two_layer(const PeriodProfile& period, std::span<const Alternative> categories,
                                  const std::map<std::string, std::vector<Alternative>>& tools_by_category,
                                  const LevelScale& scale) {
  for (const auto& [category, tools] : tools_by_category) {
    auto known = std::any_of(categories.begin(), categories.end(),
                             [&](const Alternative& c) { return c.id == category; });
    if (!known) throw DomainError(fmt::format("tools listed for unknown category '{}'", category));
    if (tools.empty()) throw DomainError(fmt::format("category '{}' has no tools", category));
  }

  TwoLayerResult result;
  result.categories = rank_period(period, categories, scale);
  for (const auto& [category, tools] : tools_by_category) {
    result.tools.emplace(category, rank_period(period, tools, scale));
  }
  for (const auto& category : result.categories.selection) {
    auto it = result.tools.find(category);
    if (it == result.tools.end()) {
      result.selection.push_back(category);
    } else {
      result.selection.insert(result.selection.end(), it->second.selection.begin(), it->second.selection.end());
    }
  }
  return result;
}

std::size_t kendall_tau_distance(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size()) throw DomainError("orderings differ in length");
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < b.size(); ++i) position.emplace(b[i], i);
  std::vector<std::size_t> mapped;
  mapped.reserve(a.size());
  for (const auto& id : a) {
    auto it = position.find(id);
    if (it == position.end()) throw DomainError(fmt::format("id '{}' missing from second ordering", id));
    mapped.push_back(it->second);
  }
  std::size_t discordant = 0;
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    for (std::size_t j = i + 1; j < mapped.size(); ++j) {
      if (mapped[i] > mapped[j]) ++discordant;
    }
  }
  return discordant;
}

}  // namespace ahpfse
