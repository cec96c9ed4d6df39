#include "ahpfse/validation.hpp"

#include <algorithm>

namespace ahpfse {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DimensionMismatch: return "dimension_mismatch";
    case ViolationKind::NonPositiveEntry: return "non_positive_entry";
    case ViolationKind::DiagonalNotOne: return "diagonal_not_one";
    case ViolationKind::ReciprocityViolation: return "reciprocity_violation";
    case ViolationKind::OffScaleValue: return "off_scale_value";
    case ViolationKind::EntryOutOfRange: return "entry_out_of_range";
    case ViolationKind::RowMassViolation: return "row_mass_violation";
    case ViolationKind::RowMassDeviation: return "row_mass_deviation";
  }
  return "unknown";
}

bool ValidationResult::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationResult::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out;
}

}  // namespace ahpfse
