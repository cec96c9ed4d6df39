#include "demo.hpp"

#include "ahpfse/document.hpp"
#include "ahpfse/scenario.hpp"
#include "ahpfse/sensitivity.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <array>
#include <cmath>
#include <ostream>
#include <string>

namespace ahpfse::cli {
namespace {

// Figures as published for the three rescue periods.
struct Published {
  const char* period;
  double lambda_max;
  double ci;
  double cr;
  std::array<double, 6> weights;
  const char* ci_remark;
};

constexpr std::array<Published, 3> kPublished = {{
    {"golden", 6.0414, 0.0083, 0.0066, {0.4076, 0.0694, 0.1665, 0.1435, 0.0694, 0.1435}, ""},
    {"early", 6.3130, 0.0626, 0.0497, {0.0691, 0.1885, 0.2143, 0.1631, 0.1206, 0.2444},
     "published as 0.626, a decimal slip"},
    {"late", 6.0690, 0.0138, 0.0110, {0.0481, 0.2326, 0.1096, 0.2066, 0.2066, 0.1965}, ""},
}};

constexpr double kWeightTol = 0.005;
constexpr double kLambdaTol = 0.005;
constexpr double kIndexTol = 0.001;

std::string mark(bool ok, bool color) {
  if (!color) return ok ? "ok" : "DIFF";
  return ok ? "\033[32mok\033[0m" : "\033[31mDIFF\033[0m";
}

}  // namespace

int run_demo(std::ostream& out, bool color) {
  const Scenario scenario(paper_dataset());
  std::size_t mismatches = 0;

  fmt::print(out, "Rescue transport selection: AHP weights + fuzzy synthetic evaluation\n");
  fmt::print(out, "dataset: bundled ({} criteria, {} periods, {} alternatives)\n\n", scenario.criteria().size(),
             scenario.periods().size(), scenario.alternatives().size());

  for (const auto& ref : kPublished) {
    const auto& period = scenario.period(ref.period);
    const auto& c = period.consistency();
    const bool lambda_ok = std::abs(c.lambda_max - ref.lambda_max) <= kLambdaTol;
    const bool ci_ok = std::abs(c.ci - ref.ci) <= kIndexTol;
    const bool cr_ok = std::abs(c.cr - ref.cr) <= kIndexTol;
    mismatches += !lambda_ok + !ci_ok + !cr_ok;

    fmt::print(out, "== period {} ==\n", ref.period);
    fmt::print(out, "  lambda_max={:.4f}  published {:.4f}  {}\n", c.lambda_max, ref.lambda_max, mark(lambda_ok, color));
    fmt::print(out, "  CI={:.4f}  published {:.4f}{}  {}\n", c.ci, ref.ci,
               *ref.ci_remark ? fmt::format(" ({})", ref.ci_remark) : std::string(), mark(ci_ok, color));
    fmt::print(out, "  CR={:.4f}  published {:.4f}  RI={:.2f}  acceptable={}  {}\n", c.cr, ref.cr, c.ri,
               c.acceptable ? "yes" : "no", mark(cr_ok, color));
    fmt::print(out, "  {:<20} {:>8} {:>10} {:>8}\n", "criterion", "weight", "published", "");
    for (std::size_t i = 0; i < scenario.criteria().size(); ++i) {
      const double w = period.weights()[i];
      const bool ok = std::abs(w - ref.weights[i]) <= kWeightTol;
      mismatches += !ok;
      fmt::print(out, "  {:<20} {:>8.4f} {:>10.4f} {:>8}\n", scenario.criteria()[i].name, w, ref.weights[i],
                 mark(ok, color));
    }

    const auto ranking = scenario.rank(ref.period);
    fmt::print(out, "  ranking:\n");
    for (std::size_t k = 0; k < ranking.entries.size(); ++k) {
      const auto& e = ranking.entries[k];
      fmt::print(out, "    {}. {:<10} score={:.2f} grade={}{}  B=({:.4f})\n", k + 1, e.id, e.outcome.score,
                 e.outcome.grade, e.outcome.tie ? " (tie)" : "", fmt::join(e.outcome.membership.values, ", "));
    }
    fmt::print(out, "  selection: {}\n", fmt::join(ranking.selection, ", "));
    const auto& notes = scenario.document().annotations;
    for (const auto& key : {fmt::format("selection.{}.published", ref.period),
                            fmt::format("selection.{}.published_table", ref.period),
                            fmt::format("selection.{}.published_text", ref.period)}) {
      if (auto it = notes.find(key); it != notes.end()) fmt::print(out, "  published tools: {}\n", it->second);
    }
    if (auto it = notes.find(fmt::format("period.{}.note", ref.period)); it != notes.end()) {
      fmt::print(out, "  note: {}\n", it->second);
    }
    fmt::print(out, "\n");
  }

  fmt::print(out, "== weight sensitivity (odd -> even requantization) ==\n");
  const auto reports = run_suite(scenario, requantization_suite(scenario, ScaleRemap::upward(), "upward"));
  for (const auto& r : reports) {
    const bool ok = r.within(kPublishedWeightShiftBound);
    fmt::print(out, "  {:<28} max relative weight delta={:.4f}  rank changed={}  {}\n", r.label, r.max_relative_delta,
               r.rank_changed ? "yes" : "no", mark(ok, color));
  }
  fmt::print(out, "\n{} published figure(s) outside tolerance\n", mismatches);
  return 0;
}

}  // namespace ahpfse::cli
