#include "ahpfse/service.hpp"

#include "ahpfse/json_io.hpp"
#include "ahpfse/sensitivity.hpp"

#include <fmt/format.h>

#include <charconv>
#include <mutex>
#include <random>

namespace ahpfse {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ServiceResponse error_response(int status, std::string code, std::string detail, std::string path = {}) {
  return ServiceResponse{status, {{"error", std::move(code)}, {"detail", std::move(detail)}, {"path", std::move(path)}}};
}

ServiceResponse document_error_response(int status, const DocumentError& e) {
  const auto& issues = e.issues();
  if (issues.empty()) return error_response(status, "invalid", e.what());
  return error_response(status, "invalid", issues.front().message, issues.front().path);
}

std::string random_session_id() {
  std::random_device rd;
  return fmt::format("{:08x}{:08x}", rd(), rd());
}

std::optional<std::size_t> parse_index(std::string_view text) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

std::optional<json> parse_body(std::string_view body) {
  if (body.empty()) return json::object();
  try {
    return json::parse(body.begin(), body.end());
  } catch (const json::parse_error&) {
    return std::nullopt;
  }
}

std::string token_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return fmt::format("r{}", v.get<std::int64_t>());
  return {};
}

}  // namespace

std::string ServiceResponse::text() const { return format_json(body); }

ScenarioService::ScenarioService(ScenarioDocument doc, ServiceOptions options)
    : session_id_(random_session_id()), options_(options), working_(std::move(doc)) {}

std::string ScenarioService::revision_locked() const { return fmt::format("r{}", revision_); }

std::string ScenarioService::revision() const {
  std::shared_lock lock(mutex_);
  return revision_locked();
}

Scenario ScenarioService::working() const {
  std::shared_lock lock(mutex_);
  return working_;
}

ServiceResponse ScenarioService::get_scenario() const {
  std::shared_lock lock(mutex_);
  const Scenario& s = working_;
  ordered_json criteria = ordered_json::array();
  for (const auto& c : s.criteria()) criteria.push_back({{"id", c.id}, {"name", c.name}});
  ordered_json levels = ordered_json::array();
  for (std::size_t k = 0; k < s.scale().size(); ++k) {
    levels.push_back({{"label", s.scale().labels()[k]}, {"score", s.scale().scores()[k]}});
  }
  ordered_json periods = ordered_json::array();
  for (const auto& p : s.periods()) periods.push_back(period_json(p));
  ordered_json alts = ordered_json::array();
  for (const auto& a : s.alternatives()) {
    ordered_json alt = {{"id", a.id}, {"name", a.name}, {"category", a.category}};
    if (!a.parent.empty()) alt["parent"] = a.parent;
    alts.push_back(std::move(alt));
  }
  ordered_json notes = ordered_json::object();
  for (const auto& [k, v] : s.document().annotations) notes[k] = v;
  return ServiceResponse{200,
                         {{"session", session_id_},
                          {"revision", revision_locked()},
                          {"dirty", dirty_},
                          {"undo_depth", undo_.size()},
                          {"criteria", std::move(criteria)},
                          {"levels", std::move(levels)},
                          {"periods", std::move(periods)},
                          {"alternatives", std::move(alts)},
                          {"annotations", std::move(notes)}}};
}

ServiceResponse ScenarioService::put_judgment(std::string_view period, std::string_view i_text,
                                              std::string_view j_text, std::string_view body_text) {
  auto body = parse_body(body_text);
  if (!body || !body->is_object()) return error_response(400, "malformed_body", "request body must be a JSON object");
  if (!body->contains("value")) return error_response(400, "missing_field", "\"value\" is required", "/value");
  if (!body->contains("revision")) return error_response(400, "missing_field", "\"revision\" is required", "/revision");
  for (const auto& [key, v] : body->items()) {
    if (key != "value" && key != "revision") return error_response(400, "unknown_field", "unknown field", "/" + key);
  }

  Judgment value;
  try {
    const json& v = (*body)["value"];
    if (v.is_number_integer()) {
      value = Judgment::exact(v.get<std::int64_t>());
    } else if (v.is_number_float()) {
      value = Judgment::real(v.get<double>());
    } else if (v.is_string()) {
      value = Judgment::parse(v.get<std::string>());
    } else {
      return error_response(400, "malformed_value", "value must be a number or a \"p/q\" string", "/value");
    }
  } catch (const std::exception& e) {
    return error_response(400, "malformed_value", e.what(), "/value");
  }
  if (!is_saaty_value(value)) {
    return error_response(400, "off_scale", fmt::format("{} is not on the 1/9..9 scale", value.to_string()), "/value");
  }

  std::unique_lock lock(mutex_);
  const PeriodProfile* profile = nullptr;
  for (const auto& p : working_.periods()) {
    if (p.id() == period) profile = &p;
  }
  if (profile == nullptr) return error_response(404, "unknown_period", fmt::format("no period '{}'", period), "/period");

  const std::size_t n = profile->matrix().order();
  auto i = parse_index(i_text);
  auto j = parse_index(j_text);
  if (!i || !j || *i < 1 || *j < 1 || *i > n || *j > n) {
    return error_response(400, "bad_cell", fmt::format("cell indices must be in 1..{}", n), "/cell");
  }
  if (*i == *j) return error_response(400, "diagonal", "diagonal cells are fixed at 1", "/cell");

  if (token_text((*body)["revision"]) != revision_locked()) {
    return error_response(409, "stale_revision",
                          fmt::format("revision {} is stale; current is {}", token_text((*body)["revision"]),
                                      revision_locked()),
                          "/revision");
  }

  const std::size_t row = *i - 1;
  const std::size_t col = *j - 1;
  const Judgment before = profile->matrix().at(row, col);
  // Build the new scenario first; state changes only if that succeeds.
  std::optional<Scenario> next;
  try {
    next.emplace(working_.with_period_matrix(period, profile->matrix().with_entry(row, col, value)));
  } catch (const Error& e) {
    return error_response(400, "rejected_edit", e.what(), "/value");
  }

  working_ = std::move(*next);
  undo_.push_back(Edit{std::string(period), row, col, before, value});
  if (undo_.size() > options_.undo_limit) {
    undo_.pop_front();
    undo_overflowed_ = true;
  }
  dirty_ = true;
  ++revision_;

  const auto& updated = working_.period(period);
  ordered_json out = period_json(updated);
  out["revision"] = revision_locked();
  out["dirty"] = dirty_;
  return ServiceResponse{200, std::move(out)};
}

ServiceResponse ScenarioService::post_evaluate(std::string_view period) const {
  std::shared_lock lock(mutex_);
  const PeriodProfile* profile = nullptr;
  for (const auto& p : working_.periods()) {
    if (p.id() == period) profile = &p;
  }
  if (profile == nullptr) return error_response(404, "unknown_period", fmt::format("no period '{}'", period), "/period");
  const auto categories = working_.categories();
  if (categories.empty()) return error_response(422, "no_alternatives", "the scenario has no alternatives to rank");
  return ServiceResponse{200, to_json(rank_period(*profile, categories, working_.scale()))};
}

ServiceResponse ScenarioService::post_whatif(std::string_view body_text) const {
  auto body = parse_body(body_text);
  if (!body) return error_response(400, "malformed_body", "request body must be JSON");

  // Analyze against a snapshot so long computations never hold the lock.
  Scenario snapshot = working();
  Perturbation perturbation;
  try {
    perturbation = perturbation_from_json(*body, snapshot.criteria().size());
  } catch (const DocumentError& e) {
    return document_error_response(400, e);
  }
  SensitivityReport report = analyze(snapshot, perturbation);
  if (!report.ok()) return error_response(400, "invalid_perturbation", report.error);
  return ServiceResponse{200, to_json(report)};
}

ServiceResponse ScenarioService::post_undo(std::string_view body_text) {
  auto body = parse_body(body_text);
  if (!body || !body->is_object()) return error_response(400, "malformed_body", "request body must be a JSON object");

  std::unique_lock lock(mutex_);
  if (body->contains("revision") && token_text((*body)["revision"]) != revision_locked()) {
    return error_response(409, "stale_revision", fmt::format("current revision is {}", revision_locked()), "/revision");
  }
  if (undo_.empty()) return error_response(409, "nothing_to_undo", "the undo stack is empty");

  const Edit edit = undo_.back();
  const auto& matrix = working_.period(edit.period).matrix();
  Scenario next = working_.with_period_matrix(edit.period, matrix.with_entry(edit.row, edit.col, edit.before));

  working_ = std::move(next);
  undo_.pop_back();
  dirty_ = !undo_.empty() || undo_overflowed_;
  ++revision_;

  ordered_json out = period_json(working_.period(edit.period));
  out["revision"] = revision_locked();
  out["dirty"] = dirty_;
  return ServiceResponse{200, std::move(out)};
}

}  // namespace ahpfse
