#include "ahpfse/json_io.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace ahpfse {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void write_value(const ordered_json& v, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, item] : v.items()) {
      if (!first) out += ",\n";
      first = false;
      out += inner + json(key).dump() + ": ";
      write_value(item, depth + 1, out);
    }
    out += "\n" + pad + "}";
    return;
  }
  if (v.is_array()) {
    if (v.empty()) {
      out += "[]";
      return;
    }
    const bool flat = std::none_of(v.begin(), v.end(), [](const ordered_json& e) { return e.is_structured(); });
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        out += v[i].dump();
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out += ",\n";
      out += inner;
      write_value(v[i], depth + 1, out);
    }
    out += "\n" + pad + "]";
    return;
  }
  out += v.dump();
}

[[noreturn]] void reject(std::string path, std::string message) {
  throw DocumentError({Issue{std::move(path), std::move(message), 0}});
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) reject(fmt::format("{}/{}", path, key), "missing required field");
  return j.at(key);
}

std::string string_field(const json& j, const char* key, const std::string& path) {
  const json& v = field(j, key, path);
  if (!v.is_string()) reject(fmt::format("{}/{}", path, key), "expected a string");
  return v.get<std::string>();
}

Judgment judgment_value(const json& v, const std::string& path) {
  try {
    if (v.is_number_integer()) return Judgment::exact(v.get<std::int64_t>());
    if (v.is_number_float()) return Judgment::real(v.get<double>());
    if (v.is_string()) return Judgment::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    reject(path, e.what());
  }
  reject(path, "expected a number or a \"p/q\" string");
}

std::size_t one_based(const json& j, const char* key, const std::string& path, std::size_t limit) {
  const json& v = field(j, key, path);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1 || static_cast<std::size_t>(v.get<std::int64_t>()) > limit) {
    reject(fmt::format("{}/{}", path, key), fmt::format("expected an index in 1..{}", limit));
  }
  return static_cast<std::size_t>(v.get<std::int64_t>()) - 1;
}

void only_fields(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) reject(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      reject(fmt::format("{}/{}", path, key), "unknown field");
    }
  }
}

ScaleRemap remap_value(const json& v, const std::string& path, std::string& name) {
  if (v.is_string()) {
    name = v.get<std::string>();
    if (name == "upward" || name == "default") {
      name = "upward";
      return ScaleRemap::upward();
    }
    if (name == "downward") return ScaleRemap::downward();
    if (name == "identity") return ScaleRemap::identity();
    reject(path, fmt::format("unknown remap '{}'", name));
  }
  if (!v.is_array()) reject(path, "expected a remap name or an array of [from, to] pairs");
  name = "custom";
  std::vector<std::pair<Judgment, Judgment>> entries;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::string item = fmt::format("{}/{}", path, k);
    if (!v[k].is_array() || v[k].size() != 2) reject(item, "expected a [from, to] pair");
    entries.emplace_back(judgment_value(v[k][0], item + "/0"), judgment_value(v[k][1], item + "/1"));
  }
  return ScaleRemap(std::move(entries));
}

std::vector<std::vector<Judgment>> judgment_rows(const json& v, const std::string& path) {
  if (!v.is_array()) reject(path, "expected an array of rows");
  std::vector<std::vector<Judgment>> rows;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array()) reject(fmt::format("{}/{}", path, i), "expected an array");
    std::vector<Judgment> row;
    for (std::size_t k = 0; k < v[i].size(); ++k) row.push_back(judgment_value(v[i][k], fmt::format("{}/{}/{}", path, i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_json(const ordered_json& value) {
  std::string out;
  write_value(value, 0, out);
  return out;
}

ordered_json to_json(const WeightVector& weights) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    out.push_back({{"criterion", weights.labels()[i]}, {"weight", weights[i]}});
  }
  return out;
}

ordered_json to_json(const ConsistencyReport& r) {
  return {{"lambda_max", r.lambda_max}, {"ci", r.ci},           {"ri", r.ri},
          {"cr", r.cr},                 {"threshold", r.threshold}, {"acceptable", r.acceptable}};
}

ordered_json to_json(const EvaluationOutcome& o) {
  return {{"membership", o.membership.values},
          {"grade", o.grade},
          {"grade_index", o.grade_index},
          {"tie", o.tie},
          {"score", o.score}};
}

ordered_json to_json(const RankingResult& ranking) {
  ordered_json entries = ordered_json::array();
  for (std::size_t k = 0; k < ranking.entries.size(); ++k) {
    ordered_json e = {{"rank", k + 1}, {"alternative", ranking.entries[k].id}};
    const ordered_json outcome = to_json(ranking.entries[k].outcome);
    for (const auto& [key, value] : outcome.items()) e[key] = value;
    entries.push_back(std::move(e));
  }
  return {{"period", ranking.period_id}, {"ranking", std::move(entries)}, {"selection", ranking.selection}};
}

ordered_json to_json(const TwoLayerResult& result) {
  ordered_json tools = ordered_json::object();
  for (const auto& [category, ranking] : result.tools) tools[category] = to_json(ranking);
  return {{"categories", to_json(result.categories)}, {"tools", std::move(tools)}, {"selection", result.selection}};
}

ordered_json to_json(const SelectionPolicy& policy) {
  ordered_json out = {{"kind", std::string(to_string(policy.kind))}};
  switch (policy.kind) {
    case SelectionPolicy::Kind::All: break;
    case SelectionPolicy::Kind::TopK: out["k"] = policy.k; break;
    case SelectionPolicy::Kind::ScoreThreshold: out["threshold"] = policy.threshold; break;
    case SelectionPolicy::Kind::GradeAtLeast: out["grade"] = policy.grade; break;
  }
  return out;
}

ordered_json to_json(const SensitivityReport& report) {
  ordered_json periods = ordered_json::array();
  for (const auto& p : report.periods) {
    ordered_json deltas = ordered_json::array();
    for (const auto& d : p.deltas) {
      deltas.push_back({{"criterion", d.criterion}, {"baseline", d.baseline}, {"perturbed", d.perturbed},
                        {"relative", d.relative}});
    }
    ordered_json item = {{"period", p.period_id},
                         {"baseline_weights", to_json(p.baseline_weights)},
                         {"perturbed_weights", to_json(p.perturbed_weights)},
                         {"baseline_consistency", to_json(p.baseline_consistency)},
                         {"perturbed_consistency", to_json(p.perturbed_consistency)},
                         {"deltas", std::move(deltas)},
                         {"max_relative_delta", p.max_relative_delta},
                         {"rank_changed", p.rank_changed},
                         {"selection_changed", p.selection_changed},
                         {"kendall_tau", p.kendall_tau}};
    item["baseline_ranking"] = p.baseline_ranking ? to_json(*p.baseline_ranking) : ordered_json();
    item["perturbed_ranking"] = p.perturbed_ranking ? to_json(*p.perturbed_ranking) : ordered_json();
    periods.push_back(std::move(item));
  }
  ordered_json out = {{"label", report.label},
                      {"kind", report.kind},
                      {"max_relative_delta", report.max_relative_delta},
                      {"rank_changed", report.rank_changed},
                      {"selection_changed", report.selection_changed},
                      {"periods", std::move(periods)}};
  if (!report.ok()) out["error"] = report.error;
  return out;
}

ordered_json period_json(const PeriodProfile& period) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : period.matrix().rows()) {
    ordered_json r = ordered_json::array();
    for (const auto& cell : row) r.push_back(cell.to_string());
    rows.push_back(std::move(r));
  }
  return {{"id", period.id()},
          {"policy", to_json(period.policy())},
          {"judgments", std::move(rows)},
          {"weights", to_json(period.weights())},
          {"consistency", to_json(period.consistency())}};
}

Perturbation perturbation_from_json(const json& body, std::size_t criterion_count) {
  const std::string path;
  if (!body.is_object()) reject("/", "expected a perturbation object");
  const std::string kind = string_field(body, "kind", path);
  Perturbation p;
  if (body.contains("label")) {
    if (!body["label"].is_string()) reject("/label", "expected a string");
    p.label = body["label"].get<std::string>();
  }

  if (kind == "entry_edit") {
    only_fields(body, path, {"kind", "label", "period", "i", "j", "value"});
    EntryEdit e;
    e.period = string_field(body, "period", path);
    e.row = one_based(body, "i", path, criterion_count);
    e.col = one_based(body, "j", path, criterion_count);
    e.value = judgment_value(field(body, "value", path), "/value");
    if (p.label.empty()) p.label = fmt::format("{} ({},{}) := {}", e.period, e.row + 1, e.col + 1, e.value.to_string());
    p.payload = std::move(e);
  } else if (kind == "scale_requantize") {
    only_fields(body, path, {"kind", "label", "period", "remap"});
    ScaleRequantize r;
    if (body.contains("period")) r.period = string_field(body, "period", path);
    r.remap = body.contains("remap") ? remap_value(body["remap"], "/remap", r.remap_name) : ScaleRemap::upward();
    if (r.remap_name.empty()) r.remap_name = "upward";
    if (p.label.empty()) p.label = fmt::format("{} requantize {}", r.period.empty() ? "all" : r.period, r.remap_name);
    p.payload = std::move(r);
  } else if (kind == "matrix_replace") {
    only_fields(body, path, {"kind", "label", "period", "judgments"});
    MatrixReplace r;
    r.period = string_field(body, "period", path);
    auto rows = judgment_rows(field(body, "judgments", path), "/judgments");
    r.matrix = JudgmentMatrix(std::vector<std::string>(rows.size()), std::move(rows));
    if (p.label.empty()) p.label = fmt::format("{} replace matrix", r.period);
    p.payload = std::move(r);
  } else if (kind == "criterion_add") {
    only_fields(body, path, {"kind", "label", "criterion", "position", "judgments", "relation_rows"});
    CriterionAdd a;
    const json& c = field(body, "criterion", path);
    only_fields(c, "/criterion", {"id", "name"});
    a.criterion.id = string_field(c, "id", "/criterion");
    a.criterion.name = c.contains("name") ? string_field(c, "name", "/criterion") : a.criterion.id;
    a.position = criterion_count;
    if (body.contains("position")) a.position = one_based(body, "position", path, criterion_count + 1);
    const json& judgments = field(body, "judgments", path);
    if (!judgments.is_object()) reject("/judgments", "expected an object keyed by period id");
    for (const auto& [period, row] : judgments.items()) {
      const std::string row_path = "/judgments/" + period;
      if (!row.is_array()) reject(row_path, "expected an array");
      std::vector<Judgment> values;
      for (std::size_t k = 0; k < row.size(); ++k) values.push_back(judgment_value(row[k], fmt::format("{}/{}", row_path, k)));
      a.judgments.emplace(period, std::move(values));
    }
    const json& rel = field(body, "relation_rows", path);
    if (!rel.is_object()) reject("/relation_rows", "expected an object keyed by alternative id");
    for (const auto& [alt, row] : rel.items()) {
      const std::string row_path = "/relation_rows/" + alt;
      if (!row.is_array()) reject(row_path, "expected an array");
      std::vector<double> values;
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (!row[k].is_number()) reject(fmt::format("{}/{}", row_path, k), "expected a number");
        values.push_back(row[k].get<double>());
      }
      a.relation_rows.emplace(alt, std::move(values));
    }
    if (p.label.empty()) p.label = fmt::format("add criterion {}", a.criterion.id);
    p.payload = std::move(a);
  } else if (kind == "criterion_remove") {
    only_fields(body, path, {"kind", "label", "criterion"});
    CriterionRemove r{string_field(body, "criterion", path)};
    if (p.label.empty()) p.label = fmt::format("remove criterion {}", r.criterion);
    p.payload = std::move(r);
  } else {
    reject("/kind", fmt::format("unknown perturbation kind '{}'", kind));
  }
  return p;
}

std::vector<Perturbation> suite_from_json(const json& body, std::size_t criterion_count) {
  const json* items = &body;
  if (body.is_object()) {
    only_fields(body, "", {"perturbations"});
    items = &field(body, "perturbations", "");
  }
  if (!items->is_array()) reject("/", "expected an array of perturbations");
  std::vector<Perturbation> out;
  for (std::size_t k = 0; k < items->size(); ++k) {
    try {
      out.push_back(perturbation_from_json((*items)[k], criterion_count));
    } catch (const DocumentError& e) {
      std::vector<Issue> issues = e.issues();
      for (auto& issue : issues) issue.path = fmt::format("/perturbations/{}{}", k, issue.path == "/" ? "" : issue.path);
      throw DocumentError(std::move(issues));
    }
  }
  return out;
}

}  // namespace ahpfse
