#include "ahpfse/judgment.hpp"

#include "ahpfse/error.hpp"

#include <fmt/format.h>

#include <array>
#include <charconv>
#include <cmath>

namespace ahpfse {
namespace {

constexpr std::array<Judgment::Rational, 17> kLadder = {
    Judgment::Rational(1, 9), Judgment::Rational(1, 8), Judgment::Rational(1, 7),
    Judgment::Rational(1, 6), Judgment::Rational(1, 5), Judgment::Rational(1, 4),
    Judgment::Rational(1, 3), Judgment::Rational(1, 2), Judgment::Rational(1),
    Judgment::Rational(2),    Judgment::Rational(3),    Judgment::Rational(4),
    Judgment::Rational(5),    Judgment::Rational(6),    Judgment::Rational(7),
    Judgment::Rational(8),    Judgment::Rational(9)};

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

double to_double(const Judgment::Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace

Judgment Judgment::real(double v) {
  if (!std::isfinite(v)) throw DomainError("judgment value must be finite");
  return Judgment(v);
}

Judgment Judgment::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw DomainError("empty judgment value");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (!num || !den) throw DomainError(fmt::format("malformed quotient '{}'", text));
    if (*den == 0) throw DomainError(fmt::format("zero denominator in '{}'", text));
    return Judgment(Rational(*num, *den));
  }
  if (auto i = parse_int(text)) return Judgment(Rational(*i));

  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw DomainError(fmt::format("malformed judgment '{}'", text));
  return real(v);
}

std::optional<Judgment::Rational> Judgment::rational() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  return std::nullopt;
}

double Judgment::value() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return to_double(*r);
  return std::get<double>(value_);
}

Judgment Judgment::reciprocal() const {
  if (const auto* r = std::get_if<Rational>(&value_)) {
    if (r->numerator() == 0) throw DomainError("reciprocal of zero judgment");
    return Judgment(Rational(r->denominator(), r->numerator()));
  }
  const double v = std::get<double>(value_);
  if (v == 0.0) throw DomainError("reciprocal of zero judgment");
  return Judgment(1.0 / v);
}

std::string Judgment::to_string() const {
  if (const auto* r = std::get_if<Rational>(&value_)) {
    if (r->denominator() == 1) return fmt::format("{}", r->numerator());
    return fmt::format("{}/{}", r->numerator(), r->denominator());
  }
  return fmt::format("{:.6g}", std::get<double>(value_));
}

bool operator==(const Judgment& a, const Judgment& b) {
  if (a.is_exact() && b.is_exact()) return *a.rational() == *b.rational();
  const double x = a.value();
  const double y = b.value();
  return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y));
}

bool are_reciprocal(const Judgment& a, const Judgment& b) {
  if (a.is_exact() && b.is_exact()) return *a.rational() * *b.rational() == Judgment::Rational(1);
  return std::abs(a.value() * b.value() - 1.0) <= 1e-9;
}

std::span<const Judgment::Rational> saaty_values() { return kLadder; }

std::optional<std::size_t> saaty_rank(const Judgment& j) {
  for (std::size_t k = 0; k < kLadder.size(); ++k) {
    if (auto r = j.rational()) {
      if (*r == kLadder[k]) return k;
    } else if (std::abs(j.value() - to_double(kLadder[k])) <= 1e-9) {
      return k;
    }
  }
  return std::nullopt;
}

}  // namespace ahpfse
