#pragma once

#include <iosfwd>

namespace ahpfse::cli {

/// Full reproduction run over the bundled dataset, compared with the
/// published figures. Returns an exit code (always 0 unless the dataset
/// itself fails to load).
int run_demo(std::ostream& out, bool color);

}  // namespace ahpfse::cli
