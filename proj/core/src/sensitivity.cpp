#include "ahpfse/sensitivity.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <future>

namespace ahpfse {
namespace {

using Rational = Judgment::Rational;

ScaleRemap odd_shift(int direction) {
  std::vector<std::pair<Judgment, Judgment>> entries;
  for (std::int64_t v = 1; v <= 9; ++v) {
    std::int64_t to = v;
    if (v > 1 && v % 2 == 1) to = (v + direction > 9) ? v - 1 : v + direction;
    entries.emplace_back(Judgment::exact(v), Judgment::exact(to));
    if (v > 1) entries.emplace_back(Judgment::exact(1, v), Judgment::exact(1, to));
  }
  return ScaleRemap(std::move(entries));
}

std::size_t criterion_index(const ScenarioDocument& doc, std::string_view id) {
  for (std::size_t i = 0; i < doc.criteria.size(); ++i) {
    if (doc.criteria[i].id == id) return i;
  }
  throw DomainError(fmt::format("unknown criterion '{}'", id));
}

std::optional<RankingResult> rank_if_any(const Scenario& s, std::string_view period) {
  auto cats = s.categories();
  if (cats.empty()) return std::nullopt;
  return rank_period(s.period(period), cats, s.scale());
}

struct Visitor {
  const Scenario& scenario;

  Scenario operator()(const EntryEdit& e) const {
    const auto& m = scenario.period(e.period).matrix();
    return scenario.with_period_matrix(e.period, perturb_entry(m, e.row, e.col, e.value, false));
  }
  Scenario operator()(const ScaleRequantize& r) const {
    ScenarioDocument doc = scenario.document();
    for (auto& p : doc.periods) {
      if (r.period.empty() || p.id == r.period) p.judgments = requantize_scale(p.judgments, r.remap);
    }
    if (!r.period.empty()) (void)scenario.period(r.period);
    return Scenario(std::move(doc));
  }
  Scenario operator()(const MatrixReplace& r) const {
    const auto& current = scenario.period(r.period).matrix();
    if (r.matrix.order() != current.order()) {
      throw DomainError(fmt::format("replacement matrix has order {}, expected {}", r.matrix.order(), current.order()));
    }
    JudgmentMatrix m(current.labels(), r.matrix.rows());
    return scenario.with_period_matrix(r.period, std::move(m));
  }
  Scenario operator()(const CriterionAdd&) const { throw std::logic_error("routed to apply_criterion_change"); }
  Scenario operator()(const CriterionRemove&) const { throw std::logic_error("routed to apply_criterion_change"); }
};

}  // namespace

ScaleRemap::ScaleRemap(std::vector<std::pair<Judgment, Judgment>> entries) : entries_(std::move(entries)) {}

ScaleRemap ScaleRemap::upward() { return odd_shift(+1); }
ScaleRemap ScaleRemap::downward() { return odd_shift(-1); }

ScaleRemap ScaleRemap::identity() {
  std::vector<std::pair<Judgment, Judgment>> entries;
  for (const auto& r : saaty_values()) entries.emplace_back(Judgment(r), Judgment(r));
  return ScaleRemap(std::move(entries));
}

std::optional<Judgment> ScaleRemap::lookup(const Judgment& from) const {
  for (const auto& [key, to] : entries_) {
    if (key == from) return to;
  }
  return std::nullopt;
}

std::string_view kind_name(const Perturbation& p) {
  static constexpr std::string_view names[] = {"entry_edit", "scale_requantize", "matrix_replace", "criterion_add",
                                               "criterion_remove"};
  return names[p.payload.index()];
}

JudgmentMatrix perturb_entry(const JudgmentMatrix& m, std::size_t row, std::size_t col, const Judgment& value,
                             bool strict_scale) {
  if (row == col) throw DomainError(fmt::format("diagonal cell ({},{}) is fixed at 1", row + 1, col + 1));
  if (strict_scale && !is_saaty_value(value)) {
    throw DomainError(fmt::format("{} is not on the 1/9..9 scale", value.to_string()));
  }
  return m.with_entry(row, col, value);
}

JudgmentMatrix requantize_scale(const JudgmentMatrix& m, const ScaleRemap& remap) {
  if (auto one = remap.lookup(Judgment()); one && !(*one == Judgment())) {
    throw DomainError("a remap must send 1 to 1");
  }
  const std::size_t n = m.order();
  std::vector<Judgment> upper;
  upper.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Judgment& v = m.at(i, j);
      auto to = v == Judgment() ? std::optional<Judgment>(Judgment()) : remap.lookup(v);
      if (!to) throw DomainError(fmt::format("remap has no entry for {} at ({},{})", v.to_string(), i + 1, j + 1));
      if (!(to->value() > 0.0)) throw DomainError(fmt::format("remap sends {} to a non-positive value", v.to_string()));
      upper.push_back(*to);
    }
  }
  return JudgmentMatrix::from_upper_triangle(m.labels(), upper);
}

Scenario apply_criterion_change(const Scenario& scenario, const Perturbation& change) {
  ScenarioDocument doc = scenario.document();

  if (const auto* remove = std::get_if<CriterionRemove>(&change.payload)) {
    const std::size_t index = criterion_index(doc, remove->criterion);
    if (doc.criteria.size() <= 2) throw DomainError("cannot remove a criterion: at least 2 must remain");
    doc.criteria.erase(doc.criteria.begin() + static_cast<std::ptrdiff_t>(index));
    for (auto& p : doc.periods) p.judgments = p.judgments.without(index);
    for (auto& a : doc.alternatives) {
      a.relation.criteria.erase(a.relation.criteria.begin() + static_cast<std::ptrdiff_t>(index));
      a.relation.rows.erase(a.relation.rows.begin() + static_cast<std::ptrdiff_t>(index));
    }
    return Scenario(std::move(doc));
  }

  const auto* add = std::get_if<CriterionAdd>(&change.payload);
  if (add == nullptr) throw DomainError("apply_criterion_change needs criterion_add or criterion_remove");
  if (add->criterion.id.empty()) throw DomainError("new criterion needs an id");
  for (const auto& c : doc.criteria) {
    if (c.id == add->criterion.id) throw DomainError(fmt::format("criterion '{}' already exists", c.id));
  }
  if (add->position > doc.criteria.size()) {
    throw DomainError(fmt::format("insert position {} beyond {} criteria", add->position, doc.criteria.size()));
  }
  const auto pos = static_cast<std::ptrdiff_t>(add->position);
  for (auto& p : doc.periods) {
    auto it = add->judgments.find(p.id);
    if (it == add->judgments.end()) throw DomainError(fmt::format("no judgments for period '{}'", p.id));
    p.judgments = p.judgments.with_inserted(add->position, add->criterion.id, it->second);
  }
  for (auto& a : doc.alternatives) {
    auto it = add->relation_rows.find(a.id);
    if (it == add->relation_rows.end()) throw DomainError(fmt::format("no relation row for alternative '{}'", a.id));
    if (it->second.size() != doc.levels.size()) {
      throw DomainError(fmt::format("relation row for '{}' has {} levels, expected {}", a.id, it->second.size(),
                                    doc.levels.size()));
    }
    a.relation.criteria.insert(a.relation.criteria.begin() + pos, add->criterion.id);
    a.relation.rows.insert(a.relation.rows.begin() + pos, it->second);
  }
  doc.criteria.insert(doc.criteria.begin() + pos, add->criterion);
  return Scenario(std::move(doc));
}

Scenario apply_perturbation(const Scenario& scenario, const Perturbation& perturbation) {
  if (std::holds_alternative<CriterionAdd>(perturbation.payload) ||
      std::holds_alternative<CriterionRemove>(perturbation.payload)) {
    return apply_criterion_change(scenario, perturbation);
  }
  return std::visit(Visitor{scenario}, perturbation.payload);
}

SensitivityReport analyze(const Scenario& baseline, const Perturbation& perturbation) {
  SensitivityReport report;
  report.label = perturbation.label;
  report.kind = std::string(kind_name(perturbation));
  try {
    const Scenario perturbed = apply_perturbation(baseline, perturbation);
    for (const auto& base_period : baseline.periods()) {
      const auto& new_period = perturbed.period(base_period.id());
      PeriodSensitivity ps;
      ps.period_id = base_period.id();
      ps.baseline_weights = base_period.weights();
      ps.perturbed_weights = new_period.weights();
      ps.baseline_consistency = base_period.consistency();
      ps.perturbed_consistency = new_period.consistency();
      const auto& new_labels = ps.perturbed_weights.labels();
      for (std::size_t i = 0; i < ps.baseline_weights.size(); ++i) {
        const auto& label = ps.baseline_weights.labels()[i];
        if (std::find(new_labels.begin(), new_labels.end(), label) == new_labels.end()) continue;
        CriterionDelta d;
        d.criterion = label;
        d.baseline = ps.baseline_weights[i];
        d.perturbed = ps.perturbed_weights.at(label);
        d.relative = std::abs(d.perturbed - d.baseline) / d.baseline;
        ps.max_relative_delta = std::max(ps.max_relative_delta, d.relative);
        ps.deltas.push_back(std::move(d));
      }
      ps.baseline_ranking = rank_if_any(baseline, ps.period_id);
      ps.perturbed_ranking = rank_if_any(perturbed, ps.period_id);
      if (ps.baseline_ranking && ps.perturbed_ranking) {
        const auto before = ps.baseline_ranking->order();
        const auto after = ps.perturbed_ranking->order();
        ps.rank_changed = before != after;
        ps.selection_changed = ps.baseline_ranking->selection != ps.perturbed_ranking->selection;
        ps.kendall_tau = kendall_tau_distance(before, after);
      }
      report.max_relative_delta = std::max(report.max_relative_delta, ps.max_relative_delta);
      report.rank_changed = report.rank_changed || ps.rank_changed;
      report.selection_changed = report.selection_changed || ps.selection_changed;
      report.periods.push_back(std::move(ps));
    }
  } catch (const std::exception& e) {
    report.periods.clear();
    report.max_relative_delta = 0.0;
    report.rank_changed = false;
    report.selection_changed = false;
    report.error = e.what();
  }
  return report;
}

std::vector<SensitivityReport> run_suite(const Scenario& baseline, std::span<const Perturbation> perturbations) {
  std::vector<std::future<SensitivityReport>> pending;
  pending.reserve(perturbations.size());
  for (const auto& p : perturbations) {
    pending.push_back(std::async(std::launch::async, [&baseline, &p] { return analyze(baseline, p); }));
  }
  std::vector<SensitivityReport> reports;
  reports.reserve(pending.size());
  for (auto& f : pending) reports.push_back(f.get());
  return reports;
}

SuiteSummary summarize(std::span<const SensitivityReport> reports) {
  SuiteSummary s;
  s.reports = reports.size();
  for (const auto& r : reports) {
    if (!r.ok()) ++s.errors;
    if (r.rank_changed) ++s.rank_changes;
    s.max_relative_delta = std::max(s.max_relative_delta, r.max_relative_delta);
  }
  return s;
}

std::vector<Perturbation> single_step_suite(const Scenario& scenario, std::string_view period_id) {
  const auto& m = scenario.period(period_id).matrix();
  const auto ladder = saaty_values();
  std::vector<Perturbation> out;
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = i + 1; j < m.order(); ++j) {
      auto rank = saaty_rank(m.at(i, j));
      if (!rank) continue;
      for (int step : {-1, +1}) {
        const auto target = static_cast<std::ptrdiff_t>(*rank) + step;
        if (target < 0 || target >= static_cast<std::ptrdiff_t>(ladder.size())) continue;
        Judgment value(ladder[static_cast<std::size_t>(target)]);
        out.push_back(Perturbation{fmt::format("{} ({},{}) {} -> {}", period_id, i + 1, j + 1, m.at(i, j).to_string(),
                                               value.to_string()),
                                   EntryEdit{std::string(period_id), i, j, value}});
      }
    }
  }
  return out;
}

std::vector<Perturbation> requantization_suite(const Scenario& scenario, const ScaleRemap& remap,
                                               std::string_view remap_name) {
  std::vector<Perturbation> out;
  for (const auto& p : scenario.periods()) {
    out.push_back(Perturbation{fmt::format("{} requantize {}", p.id(), remap_name),
                               ScaleRequantize{p.id(), remap, std::string(remap_name)}});
  }
  return out;
}

std::vector<Perturbation> standard_suite(const Scenario& scenario) {
  std::vector<Perturbation> out = requantization_suite(scenario, ScaleRemap::upward(), "upward");
  auto down = requantization_suite(scenario, ScaleRemap::downward(), "downward");
  out.insert(out.end(), down.begin(), down.end());
  for (const auto& p : scenario.periods()) {
    auto steps = single_step_suite(scenario, p.id());
    out.insert(out.end(), steps.begin(), steps.end());
  }
  return out;
}

}  // namespace ahpfse
