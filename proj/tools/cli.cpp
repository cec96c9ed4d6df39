#include "cli.hpp"

#include "demo.hpp"

#include "ahpfse/document.hpp"
#include "ahpfse/json_io.hpp"
#include "ahpfse/sensitivity.hpp"
#include "ahpfse/service.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unistd.h>

namespace ahpfse::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

/// Raised for bad invocations that CLI11 itself cannot detect.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string scenario_path;
  bool paper = false;
  std::string period;
  std::string format = "table";
  std::string ri_table;
  bool strict_cr = false;
  std::string alternative;
  bool two_layer = false;
  std::string suite = "standard";
  double assert_max_delta = -1.0;
  std::string bind = "127.0.0.1:8080";
  std::string static_dir;
};

std::string num(double v) { return fmt::format("{:.10f}", v); }

ScenarioDocument load_document(const Options& o) {
  if (o.paper) return paper_dataset();
  if (o.scenario_path.empty()) throw UsageError("--scenario FILE or --paper is required");
  std::ifstream probe(o.scenario_path);
  if (!probe) throw UsageError(fmt::format("cannot read scenario file '{}'", o.scenario_path));
  return read_scenario_file(o.scenario_path);
}

RandomIndexTable load_ri_table(const std::string& spec) {
  if (spec == "default") return RandomIndexTable::defaults();
  if (spec == "saaty") return RandomIndexTable::saaty_classic();
  std::ifstream in(spec);
  if (!in) throw UsageError(fmt::format("--ri-table: expected 'default', 'saaty' or a readable file, got '{}'", spec));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(fmt::format("--ri-table: {}", e.what()));
  }
  if (!j.is_object()) throw UsageError("--ri-table file must map matrix order to RI");
  std::map<std::size_t, double> values;
  for (const auto& [k, v] : j.items()) values[std::stoul(k)] = v.get<double>();
  return RandomIndexTable(std::move(values));
}

const std::string* annotation(const Scenario& s, const std::string& key) {
  auto it = s.document().annotations.find(key);
  return it == s.document().annotations.end() ? nullptr : &it->second;
}

void print(std::ostream& out, const ordered_json& j) { out << format_json(j) << "\n"; }

// ---------------------------------------------------------------------------

int cmd_weights(const Options& o, std::ostream& out, bool color) {
  ScenarioDocument doc = load_document(o);
  if (!o.ri_table.empty()) doc.random_index = load_ri_table(o.ri_table);
  const Scenario scenario(std::move(doc));
  const auto& period = scenario.period(o.period);
  const auto& c = period.consistency();
  const std::string* note = annotation(scenario, fmt::format("period.{}.note", o.period));

  if (o.format == "json") {
    ordered_json j = {{"period", period.id()}, {"weights", to_json(period.weights())}, {"consistency", to_json(c)}};
    if (note) j["note"] = *note;
    print(out, j);
  } else {
    fmt::print(out, "period {}\n", period.id());
    fmt::print(out, "{:<24} {}\n", "criterion", "weight");
    for (std::size_t i = 0; i < period.weights().size(); ++i) {
      fmt::print(out, "{:<24} {}\n", period.weights().labels()[i], num(period.weights()[i]));
    }
    fmt::print(out, "{:<24} {}\n", "lambda_max", num(c.lambda_max));
    fmt::print(out, "{:<24} {}\n", "CI", num(c.ci));
    fmt::print(out, "{:<24} {}\n", "RI", num(c.ri));
    fmt::print(out, "{:<24} {}\n", "CR", num(c.cr));
    std::string verdict = c.acceptable ? "yes" : "no";
    if (color) verdict = fmt::format("\033[{}m{}\033[0m", c.acceptable ? 32 : 31, verdict);
    fmt::print(out, "{:<24} {} (threshold {})\n", "acceptable", verdict, c.threshold);
    if (note) fmt::print(out, "note: {}\n", *note);
  }
  return (o.strict_cr && !c.acceptable) ? kValidation : kOk;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  const Scenario scenario(load_document(o));
  const auto& period = scenario.period(o.period);
  std::vector<Alternative> alts;
  if (!o.alternative.empty()) {
    alts.push_back(scenario.alternative(o.alternative));
  } else {
    alts = scenario.alternatives();
  }

  if (o.format == "json") {
    ordered_json list = ordered_json::array();
    for (const auto& a : alts) {
      ordered_json e = {{"alternative", a.id}};
      const ordered_json outcome = to_json(evaluate_alternative(period, a, scenario.scale()));
      for (const auto& [k, v] : outcome.items()) e[k] = v;
      list.push_back(std::move(e));
    }
    print(out, {{"period", period.id()}, {"evaluations", std::move(list)}});
    return kOk;
  }
  fmt::print(out, "period {}\n", period.id());
  fmt::print(out, "{:<14} {:<18} {:<10} {}\n", "alternative", "score", "grade", "membership");
  for (const auto& a : alts) {
    const auto r = evaluate_alternative(period, a, scenario.scale());
    std::vector<std::string> b;
    for (double v : r.membership.values) b.push_back(num(v));
    fmt::print(out, "{:<14} {:<18} {:<10} {}\n", a.id, num(r.score), r.grade + (r.tie ? "*" : ""), fmt::join(b, " "));
  }
  return kOk;
}

void print_ranking_table(std::ostream& out, const RankingResult& ranking, const std::string& indent = "") {
  fmt::print(out, "{}{:<5} {:<14} {:<18} {}\n", indent, "rank", "alternative", "score", "grade");
  for (std::size_t k = 0; k < ranking.entries.size(); ++k) {
    const auto& e = ranking.entries[k];
    fmt::print(out, "{}{:<5} {:<14} {:<18} {}\n", indent, k + 1, e.id, num(e.outcome.score),
               e.outcome.grade + (e.outcome.tie ? "*" : ""));
  }
  fmt::print(out, "{}selection: {}\n", indent, fmt::join(ranking.selection, ", "));
}

int cmd_rank(const Options& o, std::ostream& out) {
  const Scenario scenario(load_document(o));
  const auto& period = scenario.period(o.period);
  const auto categories = scenario.categories();
  if (categories.empty()) throw UsageError("the scenario has no alternatives to rank");

  if (o.two_layer) {
    const auto result = evaluate_two_layer(period, categories, scenario.tools_by_category(), scenario.scale());
    if (o.format == "json") {
      print(out, to_json(result));
      return kOk;
    }
    fmt::print(out, "period {}\n", period.id());
    print_ranking_table(out, result.categories);
    for (const auto& [category, ranking] : result.tools) {
      fmt::print(out, "tools in {}:\n", category);
      print_ranking_table(out, ranking, "  ");
    }
    fmt::print(out, "flattened selection: {}\n", fmt::join(result.selection, ", "));
    return kOk;
  }

  const auto ranking = rank_period(period, categories, scenario.scale());
  if (o.format == "json") {
    print(out, to_json(ranking));
    return kOk;
  }
  fmt::print(out, "period {}\n", period.id());
  print_ranking_table(out, ranking);
  return kOk;
}

std::vector<Perturbation> load_suite(const Options& o, const Scenario& scenario) {
  if (o.suite == "standard") return standard_suite(scenario);
  if (o.suite == "requantize") return requantization_suite(scenario, ScaleRemap::upward(), "upward");
  if (o.suite == "single-step") {
    std::vector<Perturbation> all;
    for (const auto& p : scenario.periods()) {
      auto steps = single_step_suite(scenario, p.id());
      all.insert(all.end(), steps.begin(), steps.end());
    }
    return all;
  }
  std::ifstream in(o.suite);
  if (!in) throw UsageError(fmt::format("--suite: expected standard, requantize, single-step or a file, got '{}'", o.suite));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError({Issue{"", e.what(), 0}});
  }
  return suite_from_json(j, scenario.criteria().size());
}

int cmd_sensitivity(const Options& o, std::ostream& out, std::ostream& err) {
  const Scenario scenario(load_document(o));
  const auto perturbations = load_suite(o, scenario);
  const auto reports = run_suite(scenario, perturbations);
  const auto summary = summarize(reports);
  const bool asserting = o.assert_max_delta >= 0.0;

  std::size_t exceeded = 0;
  for (const auto& r : reports) {
    if (asserting && r.ok() && r.max_relative_delta > o.assert_max_delta) ++exceeded;
  }

  if (o.format == "json") {
    ordered_json list = ordered_json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    print(out, {{"reports", std::move(list)},
                {"summary",
                 {{"reports", summary.reports},
                  {"errors", summary.errors},
                  {"rank_changes", summary.rank_changes},
                  {"max_relative_delta", summary.max_relative_delta}}}});
  } else {
    fmt::print(out, "{:<34} {:<16} {:<8} {:<10} {}\n", "perturbation", "max_rel_delta", "<=15%", "rank_chg", "sel_chg");
    for (const auto& r : reports) {
      if (!r.ok()) {
        fmt::print(out, "{:<34} error: {}\n", r.label, r.error);
        continue;
      }
      fmt::print(out, "{:<34} {:<16} {:<8} {:<10} {}\n", r.label, num(r.max_relative_delta),
                 r.within(kPublishedWeightShiftBound) ? "yes" : "no", r.rank_changed ? "yes" : "no",
                 r.selection_changed ? "yes" : "no");
    }
    fmt::print(out, "{} reports, {} errors, {} with rank changes, largest relative weight delta {}\n", summary.reports,
               summary.errors, summary.rank_changes, num(summary.max_relative_delta));
  }
  if (exceeded > 0) {
    fmt::print(err, "{} report(s) exceed --assert-max-delta {}\n", exceeded, o.assert_max_delta);
    return kAssertion;
  }
  return kOk;
}

HttpFrontend* g_frontend = nullptr;

extern "C" void handle_stop_signal(int) {
  if (g_frontend) g_frontend->stop();
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  const auto colon = o.bind.rfind(':');
  if (colon == std::string::npos) throw UsageError("--bind expects HOST:PORT");
  const std::string host = o.bind.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(o.bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("--bind expects HOST:PORT");
  }

  ScenarioService service(load_document(o));
  std::optional<std::filesystem::path> static_dir;
  if (!o.static_dir.empty()) static_dir = o.static_dir;
  HttpFrontend frontend(service, static_dir);
  const int bound = frontend.bind(host, port);
  if (bound < 0) {
    fmt::print(err, "cannot bind {}\n", o.bind);
    return kUsage;
  }
  fmt::print(out, "serving on http://{}:{}/ (Ctrl-C to stop)\n", host, bound);
  out.flush();
  g_frontend = &frontend;
  std::signal(SIGINT, handle_stop_signal);
  std::signal(SIGTERM, handle_stop_signal);
  frontend.listen();
  g_frontend = nullptr;
  return kOk;
}

void add_source_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario_path, "Scenario document (JSON)");
  cmd->add_flag("--paper", o.paper, "Use the bundled rescue-transport dataset");
}

void add_format_option(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}));
}

}  // namespace

bool color_enabled() { return std::getenv("NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO) == 1; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"AHP + fuzzy synthetic evaluation for rescue transport selection", "ahpfse"};
  app.require_subcommand(1);

  auto* weights = app.add_subcommand("weights", "Criterion weights and consistency for one period");
  add_source_options(weights, o);
  weights->add_option("--period", o.period, "Period id")->required();
  weights->add_option("--ri-table", o.ri_table, "Random index table: default, saaty, or a JSON file");
  weights->add_flag("--strict-cr", o.strict_cr, "Exit 2 when CR exceeds the threshold");
  add_format_option(weights, o);

  auto* evaluate = app.add_subcommand("evaluate", "Membership vector, grade and score per alternative");
  add_source_options(evaluate, o);
  evaluate->add_option("--period", o.period, "Period id")->required();
  evaluate->add_option("--alternative", o.alternative, "Only this alternative");
  add_format_option(evaluate, o);

  auto* rank = app.add_subcommand("rank", "Ranking and tool selection for one period");
  add_source_options(rank, o);
  rank->add_option("--period", o.period, "Period id")->required();
  rank->add_flag("--two-layer", o.two_layer, "Also rank tools inside each category");
  add_format_option(rank, o);

  auto* sensitivity = app.add_subcommand("sensitivity", "Run a perturbation suite");
  add_source_options(sensitivity, o);
  sensitivity->add_option("--suite", o.suite, "standard, requantize, single-step, or a JSON suite file");
  sensitivity->add_option("--assert-max-delta", o.assert_max_delta, "Exit 3 if any max relative weight delta exceeds this");
  add_format_option(sensitivity, o);

  auto* demo = app.add_subcommand("demo", "Reproduce the bundled dataset's published figures");
  demo->add_flag("--paper", o.paper, "Use the bundled dataset")->required();

  auto* serve = app.add_subcommand("serve", "Start the HTTP service");
  add_source_options(serve, o);
  serve->add_option("--bind", o.bind, "HOST:PORT");
  serve->add_option("--static", o.static_dir, "Directory served at /");

  std::vector<const char*> argv{"ahpfse"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  const bool color = color_enabled();
  try {
    if (*weights) return cmd_weights(o, out, color);
    if (*evaluate) return cmd_evaluate(o, out);
    if (*rank) return cmd_rank(o, out);
    if (*sensitivity) return cmd_sensitivity(o, out, err);
    if (*demo) return run_demo(out, color);
    if (*serve) return cmd_serve(o, out, err);
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const DomainError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsage;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kValidation;
  }
  return kUsage;
}

}  // namespace ahpfse::cli
