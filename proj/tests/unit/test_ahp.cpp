#include "ahpfse/ahp.hpp"
#include "ahpfse/error.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace ahpfse;

namespace {

oracle::Dense to_dense(const JudgmentMatrix& m) {
  const auto flat = m.dense();
  const std::size_t n = m.order();
  oracle::Dense d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i][j] = flat[i * n + j];
  }
  return d;
}

JudgmentMatrix matrix_from_text(const std::vector<std::vector<const char*>>& rows) {
  std::vector<std::vector<Judgment>> cells;
  for (const auto& r : rows) {
    auto& out = cells.emplace_back();
    for (const char* c : r) out.push_back(Judgment::parse(c));
  }
  return JudgmentMatrix(gen::labels(rows.size()), cells);
}

}  // namespace

TEST(JudgmentMatrix, UpperTriangleFillsReciprocals) {
  const std::vector<Judgment> upper{Judgment::exact(3), Judgment::exact(5), Judgment::exact(2)};
  const auto m = JudgmentMatrix::from_upper_triangle(gen::labels(3), upper);
  EXPECT_EQ(m.at(1, 0), Judgment::exact(1, 3));
  EXPECT_EQ(m.at(2, 0), Judgment::exact(1, 5));
  EXPECT_EQ(m.at(2, 1), Judgment::exact(1, 2));
  EXPECT_EQ(m.at(1, 1), Judgment::exact(1));
  EXPECT_TRUE(validate_judgment_matrix(m, true).ok());
}

TEST(JudgmentMatrix, WithEntryKeepsReciprocity) {
  const auto m = JudgmentMatrix::from_upper_triangle(gen::labels(3), std::vector<Judgment>(3));
  const auto edited = m.with_entry(0, 2, Judgment::exact(7));
  EXPECT_EQ(edited.at(0, 2), Judgment::exact(7));
  EXPECT_EQ(edited.at(2, 0), Judgment::exact(1, 7));
  EXPECT_EQ(m.at(0, 2), Judgment::exact(1));
  EXPECT_THROW(m.with_entry(1, 1, Judgment::exact(2)), DomainError);
}

TEST(Validation, ReportsEachStructuralProblem) {
  const auto bad_reciprocal = matrix_from_text({{"1", "2"}, {"3", "1"}});
  const auto r = validate_judgment_matrix(bad_reciprocal, false);
  ASSERT_TRUE(r.has(ViolationKind::ReciprocityViolation));
  EXPECT_EQ(r.violations.front().row, 1u);
  EXPECT_EQ(r.violations.front().col, 0u);

  EXPECT_TRUE(validate_judgment_matrix(matrix_from_text({{"2", "1"}, {"1", "1"}}), false).has(ViolationKind::DiagonalNotOne));
  EXPECT_TRUE(validate_judgment_matrix(matrix_from_text({{"1", "0"}, {"1", "1"}}), false).has(ViolationKind::NonPositiveEntry));
  EXPECT_TRUE(validate_judgment_matrix(matrix_from_text({{"1", "1", "1"}, {"1", "1"}}), false).has(ViolationKind::DimensionMismatch));

  const auto off = matrix_from_text({{"1", "2.5"}, {"0.4", "1"}});
  EXPECT_TRUE(validate_judgment_matrix(off, false).ok());
  EXPECT_TRUE(validate_judgment_matrix(off, true).has(ViolationKind::OffScaleValue));
}

TEST(RandomIndex, DefaultTableValues) {
  const auto& t = RandomIndexTable::defaults();
  EXPECT_DOUBLE_EQ(t.at(3), 0.58);
  EXPECT_DOUBLE_EQ(t.at(6), 1.26);
  EXPECT_DOUBLE_EQ(t.at(10), 1.49);
  EXPECT_DOUBLE_EQ(RandomIndexTable::saaty_classic().at(6), 1.24);
  EXPECT_THROW(t.at(11), DomainError);
  EXPECT_THROW(RandomIndexTable({{1, 0.0}, {2, 0.0}, {3, 0.9}, {4, 0.5}}), ValidationError);
}

TEST(Consistency, OrderTwoIsAlwaysConsistent) {
  const auto m = matrix_from_text({{"1", "9"}, {"1/9", "1"}});
  const auto c = consistency_check(m);
  EXPECT_NEAR(c.lambda_max, 2.0, 1e-9);
  EXPECT_EQ(c.cr, 0.0);
  EXPECT_TRUE(c.acceptable);
}

TEST(Consistency, InconsistentMatrixIsFlaggedNotRejected) {
  // a > b, b > c, c > a: a cycle.
  const auto m = matrix_from_text({{"1", "9", "1/9"}, {"1/9", "1", "9"}, {"9", "1/9", "1"}});
  const auto d = derive_weights(m);
  EXPECT_FALSE(d.consistency.acceptable);
  EXPECT_GT(d.consistency.cr, 0.1);
  for (double w : d.weights.values()) EXPECT_NEAR(w, 1.0 / 3.0, 1e-9);
}

TEST(Eigen, RejectsInvalidMatrix) {
  EXPECT_THROW(principal_eigenpair(matrix_from_text({{"1", "2"}, {"3", "1"}})), ValidationError);
}

TEST(Eigen, IterationBudgetIsEnforced) {
  std::mt19937_64 rng(7);
  const auto m = gen::ladder_matrix(rng, 6);
  EXPECT_THROW(principal_eigenpair(m, {1e-10, 1}), ConvergenceError);
}

TEST(WeightVector, EnforcesInvariants) {
  EXPECT_THROW(WeightVector({"a", "b"}, {0.5, 0.6}), ValidationError);
  EXPECT_THROW(WeightVector({"a", "b"}, {1.0, 0.0}), ValidationError);
  EXPECT_THROW(WeightVector({"a"}, {0.5, 0.5}), ValidationError);
  const WeightVector w({"a", "b"}, {0.25, 0.75});
  EXPECT_DOUBLE_EQ(w.at("b"), 0.75);
  EXPECT_THROW(w.at("z"), DomainError);
}

// ---- properties -------------------------------------------------------------

TEST(AhpProperty, ConsistentMatrixRecoversWeights) {
  std::mt19937_64 rng(20240101);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const auto w = gen::positive_weights(rng, n);
    const auto d = derive_weights(JudgmentMatrix::from_weights(gen::labels(n), w));
    EXPECT_NEAR(d.consistency.lambda_max, static_cast<double>(n), 1e-9);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(d.weights[i], w[i], 1e-9);
    EXPECT_NEAR(d.consistency.cr, 0.0, 1e-9);
  }
}

TEST(AhpProperty, PermutationEquivariance) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 7;
    const auto m = gen::ladder_matrix(rng, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto base = derive_weights(m);
    const auto moved = derive_weights(m.permuted(perm));
    EXPECT_NEAR(base.consistency.lambda_max, moved.consistency.lambda_max, 1e-9);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(moved.weights[k], base.weights[perm[k]], 1e-9);
      EXPECT_EQ(moved.weights.labels()[k], base.weights.labels()[perm[k]]);
    }
  }
}

TEST(AhpProperty, EigenResidualIsSmall) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const auto m = gen::ladder_matrix(rng, n);
    const auto e = principal_eigenpair(m);
    const auto a = to_dense(m);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a[i][j] * e.vector[j];
      residual = std::max(residual, std::abs(s - e.lambda_max * e.vector[i]));
    }
    EXPECT_LT(residual, 1e-8 * e.lambda_max) << "n=" << n;
    EXPECT_GE(e.lambda_max, static_cast<double>(n) - 1e-9);
  }
}

TEST(AhpProperty, ConsistencyIndexIdentity) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 8;
    const auto c = consistency_check(gen::ladder_matrix(rng, n));
    const double ci = (c.lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1);
    EXPECT_NEAR(c.ci, ci, 1e-12);
    EXPECT_NEAR(c.cr, ci / RandomIndexTable::defaults().at(n), 1e-12);
    EXPECT_EQ(c.acceptable, c.cr <= 0.1);
  }
}

TEST(AhpProperty, AgreesWithCharacteristicPolynomialUpToOrderFour) {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto m = gen::ladder_matrix(rng, n);
    const auto a = to_dense(m);
    const double lambda = oracle::largest_real_eigenvalue(a);
    const auto x = oracle::eigenvector_for(a, lambda);
    const auto e = principal_eigenpair(m);
    EXPECT_NEAR(e.lambda_max, lambda, 1e-6);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(e.vector[i], x[i], 1e-6);
  }
}
