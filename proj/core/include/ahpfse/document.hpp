#pragma once

#include "ahpfse/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace ahpfse {

/// Parses and fully validates a scenario document (UTF-8 JSON, format_version
/// "1"). Unknown fields are rejected. Throws DocumentError with every located
/// issue; never returns a partially valid document.
ScenarioDocument parse_scenario(std::string_view text, const ScenarioCheckOptions& options = {});

/// Canonical text: fixed key order, two-space indent, sorted maps, integers
/// and "p/q" strings for exact judgments, reals with at most 6 significant
/// digits, trailing newline.
std::string write_scenario(const ScenarioDocument& doc);

/// Reads a file and parses it. Throws Error when the file cannot be read.
ScenarioDocument read_scenario_file(const std::filesystem::path& path, const ScenarioCheckOptions& options = {});

/// Writes to a path that must not exist yet (no in-place rewrites).
void write_scenario_file(const std::filesystem::path& path, const ScenarioDocument& doc);

/// Canonical text of the bundled rescue-transport dataset.
std::string_view paper_dataset_text();

/// The bundled dataset, parsed.
const ScenarioDocument& paper_dataset();

}  // namespace ahpfse
