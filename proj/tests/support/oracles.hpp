#pragma once

// Test-only reference computations. Deliberately independent of the engine:
// no power iteration, no shared helpers, plain arrays.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

using Exact = boost::multiprecision::cpp_rational;
using Dense = std::vector<std::vector<double>>;

/// "0.4076" -> 4076/10000, "1/3" -> 1/3, "-2" -> -2. Exact.
inline Exact exact(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    return exact(text.substr(0, slash)) / exact(text.substr(slash + 1));
  }
  const bool negative = !text.empty() && text.front() == '-';
  if (negative) text.remove_prefix(1);
  const auto dot = text.find('.');
  std::string digits(text.substr(0, dot));
  boost::multiprecision::cpp_int scale = 1;
  if (dot != std::string_view::npos) {
    for (char c : text.substr(dot + 1)) {
      digits.push_back(c);
      scale *= 10;
    }
  }
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));  // no octal
  if (digits.empty()) throw std::invalid_argument("empty number");
  Exact value(boost::multiprecision::cpp_int(digits), scale);
  return negative ? Exact(-value) : value;
}

/// sum_i q_i * R_ij, every step in exact rationals.
inline std::vector<Exact> exact_membership(const std::vector<std::string>& q,
                                           const std::vector<std::vector<std::string>>& r) {
  std::vector<Exact> b(r.at(0).size(), Exact(0));
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Exact qi = exact(q[i]);
    for (std::size_t j = 0; j < b.size(); ++j) b[j] += qi * exact(r.at(i).at(j));
  }
  return b;
}

inline Exact exact_score(const std::vector<Exact>& b, const std::vector<int>& level_scores) {
  Exact s = 0;
  for (std::size_t j = 0; j < b.size(); ++j) s += b[j] * level_scores.at(j);
  return s;
}

/// Coefficients c_0..c_n of det(t I - A) = t^n + c_1 t^(n-1) + ... + c_n,
/// by the Faddeev-LeVerrier recurrence.
inline std::vector<double> characteristic_polynomial(const Dense& a) {
  const std::size_t n = a.size();
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  Dense m(n, std::vector<double>(n, 0.0));  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{k-1} I
    Dense next(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        next[i][j] = s + (i == j ? c[k - 1] : 0.0);
      }
    }
    m = std::move(next);
    // c_k = -tr(A M_k) / k
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) trace += a[i][l] * m[l][i];
    }
    c[k] = -trace / static_cast<double>(k);
  }
  return c;
}

inline double evaluate_polynomial(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (double coefficient : c) v = v * t + coefficient;
  return v;
}

/// Largest real root of the characteristic polynomial: scan down from the
/// largest row sum (a Perron bound) to the first sign change, then bisect.
inline double largest_real_eigenvalue(const Dense& a) {
  const auto c = characteristic_polynomial(a);
  double hi = 0.0;
  for (const auto& row : a) {
    double s = 0.0;
    for (double v : row) s += v;
    hi = std::max(hi, s);
  }
  hi += 1e-6;
  const double step = 1e-4;
  double upper = hi;
  double f_upper = evaluate_polynomial(c, upper);
  for (double t = hi - step; t > 0.0; t -= step) {
    const double f = evaluate_polynomial(c, t);
    if (f == 0.0) return t;
    if ((f < 0.0) != (f_upper < 0.0)) {
      double lo = t;
      double up = upper;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + up);
        const double fm = evaluate_polynomial(c, mid);
        if ((fm < 0.0) == (evaluate_polynomial(c, lo) < 0.0)) {
          lo = mid;
        } else {
          up = mid;
        }
      }
      return 0.5 * (lo + up);
    }
    upper = t;
    f_upper = f;
  }
  throw std::runtime_error("no real root found");
}

/// Null vector of (A - lambda I) by Gaussian elimination with x_last = 1,
/// normalized to sum 1.
inline std::vector<double> eigenvector_for(const Dense& a, double lambda) {
  const std::size_t n = a.size();
  // Solve the first n-1 rows for x_0..x_{n-2} with x_{n-1} = 1.
  const std::size_t m = n - 1;
  Dense aug(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) aug[i][j] = a[i][j] - (i == j ? lambda : 0.0);
    aug[i][m] = -a[i][n - 1];
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r) {
      if (std::abs(aug[r][col]) > std::abs(aug[pivot][col])) pivot = r;
    }
    std::swap(aug[col], aug[pivot]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = aug[r][col] / aug[col][col];
      for (std::size_t k = col; k <= m; ++k) aug[r][k] -= f * aug[col][k];
    }
  }
  std::vector<double> x(n, 1.0);
  for (std::size_t i = 0; i < m; ++i) x[i] = aug[i][m] / aug[i][i];
  double sum = 0.0;
  for (double v : x) sum += v;
  for (double& v : x) v /= sum;
  return x;
}

}  // namespace oracle
