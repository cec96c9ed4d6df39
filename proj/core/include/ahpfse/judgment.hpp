#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace ahpfse {

/// One cell of a pairwise-comparison matrix.
///
/// Scale values and their quotients are kept as exact rationals so that
/// reciprocity (a_ij * a_ji == 1) holds exactly. Free-form reals are allowed
/// in non-strict mode and compared with a 1e-9 tolerance.
class Judgment {
 public:
  using Rational = boost::rational<std::int64_t>;

  Judgment() : value_(Rational(1)) {}
  explicit Judgment(Rational r) : value_(r) {}

  static Judgment exact(std::int64_t num, std::int64_t den = 1) { return Judgment(Rational(num, den)); }
  static Judgment real(double v);

  /// Accepts "5", "1/3", "2.5". Integers and quotients parse as exact.
  static Judgment parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  std::optional<Rational> rational() const;
  double value() const;

  /// Throws DomainError for a zero value.
  Judgment reciprocal() const;

  /// Canonical text: "5", "1/3", or a real with at most 6 significant digits.
  std::string to_string() const;

  /// Exact comparison when both sides are rational, 1e-12 relative otherwise.
  friend bool operator==(const Judgment& a, const Judgment& b);

 private:
  explicit Judgment(double v) : value_(v) {}
  std::variant<Rational, double> value_;
};

/// True when a * b == 1 (exactly for rationals, within 1e-9 otherwise).
bool are_reciprocal(const Judgment& a, const Judgment& b);

/// The seventeen admissible pairwise ratios 1/9, 1/8, ..., 1, ..., 9 in ascending order.
std::span<const Judgment::Rational> saaty_values();

/// Position of j on the ascending ladder, or nullopt when it is off-scale.
/// Reals match a ladder value within 1e-9.
std::optional<std::size_t> saaty_rank(const Judgment& j);

inline bool is_saaty_value(const Judgment& j) { return saaty_rank(j).has_value(); }

}  // namespace ahpfse
