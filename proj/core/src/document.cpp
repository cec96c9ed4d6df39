#include "ahpfse/document.hpp"

#include "ahpfse/json_io.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace ahpfse {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Round to 6 significant digits; integral results become JSON integers.
ordered_json canonical_real(double v) {
  const double rounded = std::strtod(fmt::format("{:.6g}", v).c_str(), nullptr);
  if (rounded == std::floor(rounded) && std::abs(rounded) < 1e15) {
    return static_cast<std::int64_t>(rounded);
  }
  return rounded;
}

ordered_json judgment_json(const Judgment& j) {
  if (auto r = j.rational()) {
    if (r->denominator() == 1) return r->numerator();
    return j.to_string();
  }
  return canonical_real(j.value());
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

/// Walks the JSON tree, recording issues instead of stopping at the first.
class Reader {
 public:
  std::vector<Issue> issues;

  void fail(const std::string& path, std::string message) { issues.push_back(Issue{path, std::move(message), 0}); }

  bool expect_object(const json& j, const std::string& path, std::initializer_list<std::string_view> required,
                     std::initializer_list<std::string_view> optional) {
    if (!j.is_object()) {
      fail(path, "expected an object");
      return false;
    }
    bool ok = true;
    for (auto key : required) {
      if (!j.contains(std::string(key))) {
        fail(fmt::format("{}/{}", path, key), "missing required field");
        ok = false;
      }
    }
    for (const auto& [key, value] : j.items()) {
      const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                         std::find(optional.begin(), optional.end(), key) != optional.end();
      if (!known) {
        fail(fmt::format("{}/{}", path, key), "unknown field");
        ok = false;
      }
    }
    return ok;
  }

  std::string string(const json& j, const std::string& path) {
    if (!j.is_string()) {
      fail(path, "expected a string");
      return {};
    }
    return j.get<std::string>();
  }

  double number(const json& j, const std::string& path) {
    if (!j.is_number()) {
      fail(path, "expected a number");
      return 0.0;
    }
    return j.get<double>();
  }

  std::optional<Judgment> judgment(const json& j, const std::string& path) {
    try {
      if (j.is_number_integer()) return Judgment::exact(j.get<std::int64_t>());
      if (j.is_number_float()) return Judgment::real(j.get<double>());
      if (j.is_string()) return Judgment::parse(j.get<std::string>());
      fail(path, "expected a number or a \"p/q\" string");
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
    return std::nullopt;
  }

  std::map<std::string, std::string> string_map(const json& j, const std::string& path) {
    std::map<std::string, std::string> out;
    if (!j.is_object()) {
      fail(path, "expected an object of strings");
      return out;
    }
    for (const auto& [key, value] : j.items()) out[key] = string(value, fmt::format("{}/{}", path, key));
    return out;
  }
};

std::vector<Criterion> read_criteria(Reader& rd, const json& j) {
  std::vector<Criterion> out;
  if (!j.is_array()) {
    rd.fail("/criteria", "expected an array");
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = fmt::format("/criteria/{}", i);
    if (!rd.expect_object(j[i], path, {"id", "name"}, {})) continue;
    out.push_back(Criterion{rd.string(j[i]["id"], path + "/id"), rd.string(j[i]["name"], path + "/name")});
  }
  return out;
}

std::optional<LevelScale> read_levels(Reader& rd, const json& j) {
  if (!j.is_array()) {
    rd.fail("/levels", "expected an array");
    return std::nullopt;
  }
  std::vector<std::string> labels;
  std::vector<double> scores;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = fmt::format("/levels/{}", i);
    if (!rd.expect_object(j[i], path, {"label", "score"}, {})) continue;
    labels.push_back(rd.string(j[i]["label"], path + "/label"));
    scores.push_back(rd.number(j[i]["score"], path + "/score"));
  }
  try {
    return LevelScale(std::move(labels), std::move(scores));
  } catch (const std::exception& e) {
    rd.fail("/levels", e.what());
    return std::nullopt;
  }
}

SelectionPolicy read_policy(Reader& rd, const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind")) {
    rd.fail(path, "expected an object with a \"kind\"");
    return {};
  }
  const std::string kind = rd.string(j["kind"], path + "/kind");
  if (kind == "all") {
    rd.expect_object(j, path, {"kind"}, {});
    return SelectionPolicy::all();
  }
  if (kind == "top_k") {
    if (!rd.expect_object(j, path, {"kind", "k"}, {})) return {};
    if (!j["k"].is_number_integer()) {
      rd.fail(path + "/k", "expected an integer");
      return {};
    }
    return SelectionPolicy::top_k(j["k"].get<int>());
  }
  if (kind == "score_threshold") {
    if (!rd.expect_object(j, path, {"kind", "threshold"}, {})) return {};
    return SelectionPolicy::score_threshold(rd.number(j["threshold"], path + "/threshold"));
  }
  if (kind == "grade_at_least") {
    if (!rd.expect_object(j, path, {"kind", "grade"}, {})) return {};
    return SelectionPolicy::grade_at_least(rd.string(j["grade"], path + "/grade"));
  }
  rd.fail(path + "/kind", fmt::format("unknown policy kind '{}'", kind));
  return {};
}

std::vector<std::vector<Judgment>> read_judgments(Reader& rd, const json& j, const std::string& path) {
  std::vector<std::vector<Judgment>> rows;
  if (!j.is_array()) {
    rd.fail(path, "expected an array of rows");
    return rows;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string row_path = fmt::format("{}/{}", path, i);
    if (!j[i].is_array()) {
      rd.fail(row_path, "expected an array");
      rows.emplace_back();
      continue;
    }
    std::vector<Judgment> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      auto v = rd.judgment(j[i][k], fmt::format("{}/{}", row_path, k));
      row.push_back(v.value_or(Judgment()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<double>> read_relation(Reader& rd, const json& j, const std::string& path) {
  std::vector<std::vector<double>> rows;
  if (!j.is_array()) {
    rd.fail(path, "expected an array of rows");
    return rows;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string row_path = fmt::format("{}/{}", path, i);
    std::vector<double> row;
    if (!j[i].is_array()) {
      rd.fail(row_path, "expected an array");
    } else {
      for (std::size_t k = 0; k < j[i].size(); ++k) row.push_back(rd.number(j[i][k], fmt::format("{}/{}", row_path, k)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<RandomIndexTable> read_random_index(Reader& rd, const json& j) {
  if (!j.is_object()) {
    rd.fail("/random_index", "expected an object mapping order to RI");
    return std::nullopt;
  }
  std::map<std::size_t, double> values;
  for (const auto& [key, value] : j.items()) {
    char* end = nullptr;
    const unsigned long n = std::strtoul(key.c_str(), &end, 10);
    if (key.empty() || *end != '\0' || n == 0) {
      rd.fail(fmt::format("/random_index/{}", key), "key must be a positive matrix order");
      continue;
    }
    values[n] = rd.number(value, fmt::format("/random_index/{}", key));
  }
  try {
    return RandomIndexTable(std::move(values));
  } catch (const std::exception& e) {
    rd.fail("/random_index", e.what());
    return std::nullopt;
  }
}

}  // namespace

ScenarioDocument parse_scenario(std::string_view text, const ScenarioCheckOptions& options) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DocumentError({Issue{"", fmt::format("syntax error: {}", e.what()), line_of(text, e.byte)}});
  }

  Reader rd;
  ScenarioDocument doc;
  if (!rd.expect_object(root, "", {"format_version", "criteria", "levels", "periods", "alternatives"},
                        {"consistency_threshold", "random_index", "annotations"})) {
    if (!root.is_object()) throw DocumentError(std::move(rd.issues));
  }
  if (root.contains("format_version")) doc.format_version = rd.string(root["format_version"], "/format_version");
  if (root.contains("criteria")) doc.criteria = read_criteria(rd, root["criteria"]);
  if (root.contains("levels")) {
    if (auto levels = read_levels(rd, root["levels"])) doc.levels = std::move(*levels);
  }
  if (root.contains("consistency_threshold")) {
    doc.consistency_threshold = rd.number(root["consistency_threshold"], "/consistency_threshold");
  }
  if (root.contains("random_index")) doc.random_index = read_random_index(rd, root["random_index"]);
  if (root.contains("annotations")) doc.annotations = rd.string_map(root["annotations"], "/annotations");

  std::vector<std::string> labels;
  for (const auto& c : doc.criteria) labels.push_back(c.id);

  if (root.contains("periods")) {
    const json& periods = root["periods"];
    if (!periods.is_array()) rd.fail("/periods", "expected an array");
    for (std::size_t p = 0; periods.is_array() && p < periods.size(); ++p) {
      const std::string path = fmt::format("/periods/{}", p);
      if (!rd.expect_object(periods[p], path, {"id", "judgments"}, {"policy"})) continue;
      PeriodSpec spec;
      spec.id = rd.string(periods[p]["id"], path + "/id");
      spec.judgments = JudgmentMatrix(labels, read_judgments(rd, periods[p]["judgments"], path + "/judgments"));
      if (periods[p].contains("policy")) spec.policy = read_policy(rd, periods[p]["policy"], path + "/policy");
      doc.periods.push_back(std::move(spec));
    }
  }

  if (root.contains("alternatives")) {
    const json& alts = root["alternatives"];
    if (!alts.is_array()) rd.fail("/alternatives", "expected an array");
    for (std::size_t a = 0; alts.is_array() && a < alts.size(); ++a) {
      const std::string path = fmt::format("/alternatives/{}", a);
      if (!rd.expect_object(alts[a], path, {"id", "name", "category", "relation"}, {"parent", "metadata"})) continue;
      Alternative alt;
      alt.id = rd.string(alts[a]["id"], path + "/id");
      alt.name = rd.string(alts[a]["name"], path + "/name");
      alt.category = rd.string(alts[a]["category"], path + "/category");
      if (alts[a].contains("parent")) alt.parent = rd.string(alts[a]["parent"], path + "/parent");
      if (alts[a].contains("metadata")) alt.metadata = rd.string_map(alts[a]["metadata"], path + "/metadata");
      alt.relation = FuzzyRelationMatrix{labels, read_relation(rd, alts[a]["relation"], path + "/relation")};
      doc.alternatives.push_back(std::move(alt));
    }
  }

  if (!rd.issues.empty()) throw DocumentError(std::move(rd.issues));
  auto semantic = check_scenario(doc, options);
  if (!semantic.empty()) throw DocumentError(std::move(semantic));
  return doc;
}

std::string write_scenario(const ScenarioDocument& doc) {
  ordered_json root;
  root["format_version"] = doc.format_version;

  ordered_json criteria = ordered_json::array();
  for (const auto& c : doc.criteria) criteria.push_back({{"id", c.id}, {"name", c.name}});
  root["criteria"] = std::move(criteria);

  ordered_json levels = ordered_json::array();
  for (std::size_t k = 0; k < doc.levels.size(); ++k) {
    levels.push_back({{"label", doc.levels.labels()[k]}, {"score", canonical_real(doc.levels.scores()[k])}});
  }
  root["levels"] = std::move(levels);
  root["consistency_threshold"] = canonical_real(doc.consistency_threshold);

  if (doc.random_index) {
    ordered_json ri = ordered_json::object();
    for (const auto& [n, v] : doc.random_index->values()) ri[std::to_string(n)] = canonical_real(v);
    root["random_index"] = std::move(ri);
  }

  ordered_json periods = ordered_json::array();
  for (const auto& p : doc.periods) {
    ordered_json period;
    period["id"] = p.id;
    ordered_json policy;
    policy["kind"] = std::string(to_string(p.policy.kind));
    switch (p.policy.kind) {
      case SelectionPolicy::Kind::All: break;
      case SelectionPolicy::Kind::TopK: policy["k"] = p.policy.k; break;
      case SelectionPolicy::Kind::ScoreThreshold: policy["threshold"] = canonical_real(p.policy.threshold); break;
      case SelectionPolicy::Kind::GradeAtLeast: policy["grade"] = p.policy.grade; break;
    }
    period["policy"] = std::move(policy);
    ordered_json rows = ordered_json::array();
    for (const auto& row : p.judgments.rows()) {
      ordered_json r = ordered_json::array();
      for (const auto& cell : row) r.push_back(judgment_json(cell));
      rows.push_back(std::move(r));
    }
    period["judgments"] = std::move(rows);
    periods.push_back(std::move(period));
  }
  root["periods"] = std::move(periods);

  ordered_json alts = ordered_json::array();
  for (const auto& a : doc.alternatives) {
    ordered_json alt;
    alt["id"] = a.id;
    alt["name"] = a.name;
    alt["category"] = a.category;
    if (!a.parent.empty()) alt["parent"] = a.parent;
    ordered_json rows = ordered_json::array();
    for (const auto& row : a.relation.rows) {
      ordered_json r = ordered_json::array();
      for (double v : row) r.push_back(canonical_real(v));
      rows.push_back(std::move(r));
    }
    alt["relation"] = std::move(rows);
    if (!a.metadata.empty()) {
      ordered_json meta = ordered_json::object();
      for (const auto& [k, v] : a.metadata) meta[k] = v;
      alt["metadata"] = std::move(meta);
    }
    alts.push_back(std::move(alt));
  }
  root["alternatives"] = std::move(alts);

  ordered_json notes = ordered_json::object();
  for (const auto& [k, v] : doc.annotations) notes[k] = v;
  root["annotations"] = std::move(notes);

  return format_json(root) + "\n";
}

ScenarioDocument read_scenario_file(const std::filesystem::path& path, const ScenarioCheckOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open scenario file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), options);
}

void write_scenario_file(const std::filesystem::path& path, const ScenarioDocument& doc) {
  if (std::filesystem::exists(path)) {
    throw Error(fmt::format("refusing to overwrite existing file '{}'", path.string()));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot create '{}'", path.string()));
  out << write_scenario(doc);
}

namespace detail {
extern const std::string_view kPaperScenarioText;
}

std::string_view paper_dataset_text() { return detail::kPaperScenarioText; }

const ScenarioDocument& paper_dataset() {
  static const ScenarioDocument doc = parse_scenario(paper_dataset_text());
  return doc;
}

}  // namespace ahpfse
