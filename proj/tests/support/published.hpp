#pragma once

// Figures as printed for the bundled rescue-transport dataset, transcribed by
// hand. Strings keep the printed digits so oracles can use them exactly.

#include <array>
#include <string>
#include <vector>

namespace published {

struct PeriodFigures {
  const char* id;
  std::vector<std::string> q;
  double lambda_max;
  double ci;
  double cr;
};

inline const std::array<PeriodFigures, 3>& periods() {
  static const std::array<PeriodFigures, 3> figures{{
      {"golden", {"0.4076", "0.0694", "0.1665", "0.1435", "0.0694", "0.1435"}, 6.0414, 0.0083, 0.0066},
      // CI is printed as 0.626; (6.3130 - 6) / 5 = 0.0626.
      {"early", {"0.0691", "0.1885", "0.2143", "0.1631", "0.1206", "0.2444"}, 6.3130, 0.0626, 0.0497},
      {"late", {"0.0481", "0.2326", "0.1096", "0.2066", "0.2066", "0.1965"}, 6.0690, 0.0138, 0.0110},
  }};
  return figures;
}

using Relation = std::vector<std::vector<std::string>>;

inline const Relation& r_ship() {
  static const Relation r{{"0.05", "0.2", "0.5", "0.2", "0.05"}, {"0.5", "0.3", "0.1", "0.1", "0"},
                          {"0.1", "0.6", "0.1", "0.1", "0"},     {"0.5", "0.3", "0.1", "0.05", "0.05"},
                          {"0.3", "0.3", "0.2", "0.1", "0.1"},   {"0.1", "0.1", "0.2", "0.4", "0.2"}};
  return r;
}

inline const Relation& r_aircraft() {
  static const Relation r{{"0.8", "0.2", "0", "0", "0"},     {"0.1", "0.1", "0.1", "0.5", "0.2"},
                          {"0.1", "0.1", "0.5", "0.2", "0.1"}, {"0.1", "0.3", "0.5", "0.1", "0"},
                          {"0.7", "0.2", "0.1", "0", "0"},     {"0.8", "0.2", "0", "0", "0"}};
  return r;
}

inline const Relation& r_submarine() {
  static const Relation r{{"0", "0", "0.2", "0.6", "0.2"}, {"0.4", "0.3", "0.2", "0.1", "0"},
                          {"0", "0", "0.1", "0.5", "0.4"}, {"0.8", "0.1", "0.1", "0", "0"},
                          {"0.6", "0.2", "0.1", "0.1", "0"}, {"0.8", "0.2", "0", "0", "0"}};
  return r;
}

inline const std::vector<int>& level_scores() {
  static const std::vector<int> s{100, 80, 60, 40, 20};
  return s;
}

}  // namespace published
