#include "ahpfse/document.hpp"
#include "ahpfse/json_io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ahpfse;

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string replace_once(std::string text, std::string_view from, std::string_view to) {
  const auto at = text.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  if (at != std::string::npos) text.replace(at, from.size(), to);
  return text;
}

std::vector<Issue> issues_of(std::string_view text) {
  try {
    parse_scenario(text);
  } catch (const DocumentError& e) {
    return e.issues();
  }
  return {};
}

bool has_issue(const std::vector<Issue>& issues, std::string_view path) {
  return std::any_of(issues.begin(), issues.end(), [&](const Issue& i) { return i.path == path; });
}

const char* kMinimal = R"({
  "format_version": "1",
  "criteria": [{"id": "a", "name": "A"}, {"id": "b", "name": "B"}],
  "levels": [{"label": "Hi", "score": 10}, {"label": "Lo", "score": 0}],
  "periods": [{"id": "p", "judgments": [[1, 2.5], [0.4, 1]]}],
  "alternatives": [{"id": "x", "name": "X", "category": "x", "relation": [[0.5, 0.5], [1, 0]]}]
})";

}  // namespace

TEST(Document, BundledDatasetIsCanonical) {
  const std::string text(paper_dataset_text());
  EXPECT_EQ(write_scenario(parse_scenario(text)), text);
}

TEST(Document, BundledDatasetHashIsPinned) {
  // Any change to the bundled data or to the canonical writer shows up here.
  EXPECT_EQ(fnv1a(write_scenario(paper_dataset())), 0x220051b17a19bcfeULL);
}

TEST(Document, RoundTripIsByteStable) {
  const auto doc = parse_scenario(kMinimal);
  const auto once = write_scenario(doc);
  const auto twice = write_scenario(parse_scenario(once));
  EXPECT_EQ(once, twice);
  EXPECT_EQ(parse_scenario(once), doc);
  EXPECT_NE(once.find("[1, 2.5]"), std::string::npos);
  EXPECT_EQ(once.back(), '\n');
}

TEST(Document, DefaultsApplyWhenOptionalFieldsAreAbsent) {
  const auto doc = parse_scenario(kMinimal);
  EXPECT_EQ(doc.periods[0].policy, SelectionPolicy::all());
  EXPECT_DOUBLE_EQ(doc.consistency_threshold, 0.1);
  EXPECT_FALSE(doc.random_index.has_value());
  EXPECT_FALSE(doc.periods[0].judgments.at(0, 1).is_exact());
}

TEST(Document, SyntaxErrorsCarryLineNumbers) {
  const auto issues = issues_of("{\n  \"format_version\": \"1\",\n  oops\n}");
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].line, 3u);
}

TEST(Document, UnknownFieldsAreRejected) {
  const auto issues = issues_of(replace_once(kMinimal, "\"format_version\": \"1\",", "\"format_version\": \"1\", \"extra\": 1,"));
  EXPECT_TRUE(has_issue(issues, "/extra"));
}

TEST(Document, EveryIssueIsReported) {
  std::string text = replace_once(kMinimal, "[0.4, 1]", "[3, 1]");
  text = replace_once(text, "[1, 0]", "[0.2, 0]");
  text = replace_once(text, "\"format_version\": \"1\"", "\"format_version\": \"2\"");
  const auto issues = issues_of(text);
  EXPECT_TRUE(has_issue(issues, "/format_version"));
  EXPECT_TRUE(has_issue(issues, "/periods/0/judgments/1/0"));
  EXPECT_TRUE(has_issue(issues, "/alternatives/0/relation/1"));
}

TEST(Document, MissingRequiredField) {
  const auto issues = issues_of(R"({"format_version": "1"})");
  EXPECT_TRUE(has_issue(issues, "/criteria"));
}

TEST(Document, FilesRefuseOverwrite) {
  const auto dir = std::filesystem::temp_directory_path() / "ahpfse_document_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / "scenario.json";
  write_scenario_file(path, paper_dataset());
  EXPECT_EQ(read_scenario_file(path), paper_dataset());
  EXPECT_THROW(write_scenario_file(path, paper_dataset()), Error);
  EXPECT_THROW(read_scenario_file(dir / "missing.json"), Error);
  std::filesystem::remove_all(dir);
}

TEST(JsonFormat, ScalarArraysStayInline) {
  nlohmann::ordered_json j = {{"a", {1, 2, 3}}, {"b", {{{"c", 1}}}}, {"e", nlohmann::ordered_json::array()}};
  EXPECT_EQ(format_json(j), "{\n  \"a\": [1, 2, 3],\n  \"b\": [\n    {\n      \"c\": 1\n    }\n  ],\n  \"e\": []\n}");
}

TEST(JsonIo, PerturbationIndicesAreOneBased) {
  const auto p = perturbation_from_json(nlohmann::json::parse(R"({"kind":"entry_edit","period":"golden","i":1,"j":2,"value":"1/3"})"), 6);
  const auto& e = std::get<EntryEdit>(p.payload);
  EXPECT_EQ(e.row, 0u);
  EXPECT_EQ(e.col, 1u);
  EXPECT_EQ(e.value, Judgment::exact(1, 3));
  EXPECT_THROW(perturbation_from_json(nlohmann::json::parse(R"({"kind":"entry_edit","period":"golden","i":0,"j":2,"value":3})"), 6),
               DocumentError);
  EXPECT_THROW(perturbation_from_json(nlohmann::json::parse(R"({"kind":"nope"})"), 6), DocumentError);
  const auto r = perturbation_from_json(nlohmann::json::parse(R"({"kind":"scale_requantize","remap":[[3,4],["1/3","1/4"]]})"), 6);
  EXPECT_EQ(*std::get<ScaleRequantize>(r.payload).remap.lookup(Judgment::exact(1, 3)), Judgment::exact(1, 4));
}
