#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ahpfse {

enum class ViolationKind {
  DimensionMismatch,
  NonPositiveEntry,
  DiagonalNotOne,
  ReciprocityViolation,
  OffScaleValue,
  EntryOutOfRange,
  RowMassViolation,
  RowMassDeviation,  // warning only: row mass off 1 but inside tolerance
};

std::string_view to_string(ViolationKind kind);

/// A located problem. Row and column are 0-based; messages print them 1-based.
struct Violation {
  ViolationKind kind;
  std::size_t row = 0;
  std::size_t col = 0;
  double observed = 0.0;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  std::vector<Violation> warnings;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  /// All violation messages joined with "; ".
  std::string summary() const;
};

}  // namespace ahpfse
