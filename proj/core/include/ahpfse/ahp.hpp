#pragma once

#include "ahpfse/judgment.hpp"
#include "ahpfse/validation.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace ahpfse {

/// Square pairwise-comparison matrix with criterion labels.
///
/// Holds whatever it is given; call validate_judgment_matrix() to check the
/// reciprocal structure. Every transform returns a new matrix.
class JudgmentMatrix {
 public:
  JudgmentMatrix() = default;
  JudgmentMatrix(std::vector<std::string> labels, std::vector<std::vector<Judgment>> rows);

  /// Builds a reciprocal matrix from the strict upper triangle, given row by row
  /// ((0,1), (0,2), ..., (1,2), ...). Lower cells become reciprocals.
  static JudgmentMatrix from_upper_triangle(std::vector<std::string> labels,
                                            std::span<const Judgment> upper);

  /// Perfectly consistent matrix with entries w_i / w_j (stored as reals).
  static JudgmentMatrix from_weights(std::vector<std::string> labels, std::span<const double> weights);

  std::size_t order() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<Judgment>>& rows() const { return rows_; }
  const Judgment& at(std::size_t i, std::size_t j) const { return rows_.at(i).at(j); }

  /// Row-major copy of the entries as doubles.
  std::vector<double> dense() const;

  /// Sets (i,j) = value and (j,i) = 1/value. Throws DomainError on the diagonal.
  JudgmentMatrix with_entry(std::size_t i, std::size_t j, const Judgment& value) const;

  /// Rows and columns reordered so that new index k holds old index perm[k].
  JudgmentMatrix permuted(std::span<const std::size_t> perm) const;

  /// Drops row and column `index`.
  JudgmentMatrix without(std::size_t index) const;

  /// Inserts a criterion at `position`. `versus_existing[k]` is the judgment of
  /// the new criterion against existing criterion k (in current order).
  JudgmentMatrix with_inserted(std::size_t position, std::string label,
                               std::span<const Judgment> versus_existing) const;

  friend bool operator==(const JudgmentMatrix&, const JudgmentMatrix&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Judgment>> rows_;
};

/// Normalized criterion weights. Components are strictly positive and sum to 1.
class WeightVector {
 public:
  WeightVector() = default;
  /// Throws ValidationError when the invariants fail (sum tolerance 1e-9).
  WeightVector(std::vector<std::string> labels, std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& values() const { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }
  /// Throws DomainError for an unknown label.
  double at(std::string_view label) const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> weights_;
};

struct ConsistencyReport {
  double lambda_max = 0.0;
  double ci = 0.0;
  double ri = 0.0;
  double cr = 0.0;
  double threshold = 0.1;
  bool acceptable = true;
};

/// Random consistency index by matrix order.
class RandomIndexTable {
 public:
  /// Throws ValidationError unless RI(1) = RI(2) = 0 (when present), values are
  /// non-negative and non-decreasing in n.
  explicit RandomIndexTable(std::map<std::size_t, double> values);

  /// 1:0, 2:0, 3:0.58, 4:0.90, 5:1.12, 6:1.26, 7:1.36, 8:1.41, 9:1.46, 10:1.49.
  static const RandomIndexTable& defaults();
  /// Saaty's original table (RI(6) = 1.24).
  static const RandomIndexTable& saaty_classic();

  bool contains(std::size_t n) const { return values_.count(n) != 0; }
  /// Throws DomainError outside the table.
  double at(std::size_t n) const;
  const std::map<std::size_t, double>& values() const { return values_; }

  friend bool operator==(const RandomIndexTable&, const RandomIndexTable&) = default;

 private:
  std::map<std::size_t, double> values_;
};

struct PowerIterationOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 10000;
};

struct EigenPair {
  double lambda_max = 0.0;
  std::vector<double> vector;  // positive, sums to 1
  std::size_t iterations = 0;
};

struct DerivedWeights {
  WeightVector weights;
  ConsistencyReport consistency;
};

inline constexpr double kDefaultCrThreshold = 0.1;

/// Structural check. Non-strict mode admits any positive reals; strict mode
/// additionally requires every entry to be on the 1/9..9 ladder.
ValidationResult validate_judgment_matrix(const JudgmentMatrix& m, bool strict_scale);

/// Dominant eigenpair by power iteration from the uniform vector.
/// Converged when successive normalized iterates differ by less than
/// `tolerance` in the max norm. Throws ConvergenceError otherwise, and
/// ValidationError if `m` is not a valid reciprocal matrix.
EigenPair principal_eigenpair(const JudgmentMatrix& m, const PowerIterationOptions& options = {});

/// CI = (lambda_max - n) / (n - 1), CR = CI / RI(n); CR is 0 for n <= 2.
ConsistencyReport consistency_check(const JudgmentMatrix& m,
                                    const RandomIndexTable& ri = RandomIndexTable::defaults(),
                                    double threshold = kDefaultCrThreshold);

/// Same arithmetic as consistency_check, from an already computed eigenvalue.
ConsistencyReport consistency_from_lambda(double lambda_max, std::size_t n, const RandomIndexTable& ri,
                                          double threshold);

/// Principal eigenvector weights plus their consistency report. Succeeds even
/// when the matrix is not acceptably consistent; the report carries the flag.
DerivedWeights derive_weights(const JudgmentMatrix& m,
                              const RandomIndexTable& ri = RandomIndexTable::defaults(),
                              double threshold = kDefaultCrThreshold);

}  // namespace ahpfse
