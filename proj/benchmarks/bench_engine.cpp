#include "ahpfse/document.hpp"
#include "ahpfse/sensitivity.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace ahpfse;

JudgmentMatrix random_matrix(std::size_t n) {
  std::mt19937_64 rng(n);
  const auto ladder = saaty_values();
  std::uniform_int_distribution<std::size_t> pick(0, ladder.size() - 1);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("c" + std::to_string(i));
  std::vector<Judgment> upper;
  for (std::size_t i = 0; i < n * (n - 1) / 2; ++i) upper.emplace_back(ladder[pick(rng)]);
  return JudgmentMatrix::from_upper_triangle(labels, upper);
}

void BM_PrincipalEigenpair(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(principal_eigenpair(m));
}
BENCHMARK(BM_PrincipalEigenpair)->Arg(3)->Arg(6)->Arg(10);

void BM_RankPeriod(benchmark::State& state) {
  const Scenario s(paper_dataset());
  for (auto _ : state) benchmark::DoNotOptimize(s.rank("golden"));
}
BENCHMARK(BM_RankPeriod);

void BM_StandardSuite(benchmark::State& state) {
  const Scenario s(paper_dataset());
  const auto suite = standard_suite(s);
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(s, suite));
}
BENCHMARK(BM_StandardSuite)->Unit(benchmark::kMillisecond);

void BM_ParseWrite(benchmark::State& state) {
  const std::string text(paper_dataset_text());
  for (auto _ : state) benchmark::DoNotOptimize(write_scenario(parse_scenario(text)));
}
BENCHMARK(BM_ParseWrite);

}  // namespace
BENCHMARK_MAIN();
