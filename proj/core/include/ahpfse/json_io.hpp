#pragma once

#include "ahpfse/scenario.hpp"
#include "ahpfse/sensitivity.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace ahpfse {

/// Two-space indented JSON where arrays of scalars stay on one line.
std::string format_json(const nlohmann::ordered_json& value);

// Result serializers shared by the CLI (--format json) and the HTTP service.
// Numbers are written at full double precision.

nlohmann::ordered_json to_json(const WeightVector& weights);
nlohmann::ordered_json to_json(const ConsistencyReport& report);
nlohmann::ordered_json to_json(const EvaluationOutcome& outcome);
nlohmann::ordered_json to_json(const RankingResult& ranking);
nlohmann::ordered_json to_json(const TwoLayerResult& result);
nlohmann::ordered_json to_json(const SensitivityReport& report);
nlohmann::ordered_json to_json(const SelectionPolicy& policy);

/// Weights, consistency and matrix of one period.
nlohmann::ordered_json period_json(const PeriodProfile& period);

/// Perturbation bodies as accepted by `sensitivity --suite FILE` and POST /api/whatif.
/// Cell indices are 1-based. Throws DocumentError with field paths.
///
///   {"kind":"entry_edit","period":"golden","i":1,"j":2,"value":"1/3"}
///   {"kind":"scale_requantize","period":"golden","remap":"upward"|"downward"|"identity"|[[3,4],["1/3","1/4"]]}
///   {"kind":"matrix_replace","period":"golden","judgments":[[...],...]}
///   {"kind":"criterion_add","criterion":{"id":..,"name":..},"position":7,
///    "judgments":{"golden":[...]},"relation_rows":{"aircraft":[...]}}
///   {"kind":"criterion_remove","criterion":"cost"}
///
/// "label" is optional everywhere; "position" is 1-based and defaults to the end.
Perturbation perturbation_from_json(const nlohmann::json& body, std::size_t criterion_count);

/// A suite file: a JSON array of perturbations, or {"perturbations": [...]}.
std::vector<Perturbation> suite_from_json(const nlohmann::json& body, std::size_t criterion_count);

}  // namespace ahpfse
