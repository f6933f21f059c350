#include "diffnn/symbolic.hpp"

#include <vector>

#include <gtest/gtest.h>

#include "diffnn/rng.hpp"
#include "oracles.hpp"

namespace diffnn {
namespace {

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

Eigen::VectorXd vec(std::initializer_list<double> vals) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v(i++) = x;
  return v;
}

TEST(Symbolic, VariableAndConstant) {
  SymBounds x = SymBounds::variable(1, 3);
  Box region({Interval(-1, 1), Interval(2, 5), Interval(0, 0)});
  EXPECT_EQ(concretize(x, region), Interval(2, 5));

  SymBounds k = SymBounds::constant(Interval(0.25, 0.5), 3);
  EXPECT_EQ(concretize(k, region), Interval(0.25, 0.5));
}

TEST(Symbolic, CancellationBeatsIntervalArithmetic) {
  // p = 5x and q = 4x over x in [-1,1]: interval arithmetic widens p - q to
  // [-9,9]; carrying the difference weight symbolically keeps it at x itself.
  Box region({Interval(-1, 1)});
  Interval naive = iv_sub(iv_scale(region[0], 5.0), iv_scale(region[0], 4.0));
  EXPECT_EQ(naive, Interval(-9, 9));

  std::vector<SymBounds> x = {SymBounds::variable(0, 1)};
  std::vector<SymBounds> diff = sym_affine(x, mat({{5.0 - 4.0}}), vec({0.0}));
  EXPECT_EQ(concretize(diff[0], region), Interval(-1, 1));
}

TEST(Symbolic, IdentityMapKeepsVariables) {
  std::vector<SymBounds> prev = {SymBounds::variable(0, 2),
                                 SymBounds::variable(1, 2)};
  std::vector<SymBounds> out =
      sym_affine(prev, mat({{1.0, 0.0}, {0.0, 1.0}}), vec({0.0, 0.0}));
  Box region({Interval(-0.5, 0.25), Interval(1, 2)});
  EXPECT_EQ(concretize(out[0], region), Interval(-0.5, 0.25));
  EXPECT_EQ(concretize(out[1], region), Interval(1, 2));
}

TEST(Symbolic, NegativeWeightSwapsDirections) {
  std::vector<SymBounds> prev = {SymBounds::variable(0, 1)};
  std::vector<SymBounds> out = sym_affine(prev, mat({{-1.0}}), vec({0.0}));
  Box region({Interval(0, 1)});
  EXPECT_EQ(concretize(out[0], region), Interval(-1, 0));
}

TEST(Symbolic, AsymmetricLowerUpperExpressions) {
  // lower = 2x - y, upper = 2x + y over [0,1]^2 -> [-1, 3].
  AffineExpr lower(2), upper(2);
  lower.coeffs[0] = Interval(2.0);
  lower.coeffs[1] = Interval(-1.0);
  upper.coeffs[0] = Interval(2.0);
  upper.coeffs[1] = Interval(1.0);
  SymBounds s(lower, upper);
  Box region({Interval(0, 1), Interval(0, 1)});
  EXPECT_EQ(concretize(s, region), Interval(-1, 3));
}

TEST(Symbolic, AffineChainMatchesDirectEvaluationOnPoints) {
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::MatrixXd W = Eigen::MatrixXd::NullaryExpr(
        3, 2, [&]() { return rng.uniform(-2, 2); });
    Eigen::VectorXd b = Eigen::VectorXd::NullaryExpr(
        3, [&]() { return rng.uniform(-1, 1); });
    std::vector<SymBounds> prev = {SymBounds::variable(0, 2),
                                   SymBounds::variable(1, 2)};
    std::vector<SymBounds> out = sym_affine(prev, W, b);

    Box region({Interval(rng.uniform(-2, 0), rng.uniform(0, 2)),
                Interval(rng.uniform(-2, 0), rng.uniform(0, 2))});
    std::vector<Interval> bounds;
    bounds.reserve(out.size());
    for (const auto& s : out) bounds.push_back(concretize(s, region));

    for (int s = 0; s < 200; ++s) {
      Eigen::VectorXd x = oracle::sample_box(region, rng);
      Eigen::VectorXd y = W * x + b;
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        EXPECT_LE(bounds[static_cast<std::size_t>(i)].lo, y(i) + 1e-12);
        EXPECT_GE(bounds[static_cast<std::size_t>(i)].hi, y(i) - 1e-12);
      }
    }
  }
}

TEST(Symbolic, PointRegionCollapsesToEvaluation) {
  std::vector<SymBounds> prev = {SymBounds::variable(0, 2),
                                 SymBounds::variable(1, 2)};
  std::vector<SymBounds> out =
      sym_affine(prev, mat({{1.5, -2.0}}), vec({0.25}));
  Box region({Interval(0.5, 0.5), Interval(0.25, 0.25)});
  // 1.5*0.5 - 2*0.25 + 0.25 = 0.5, all exactly representable.
  EXPECT_EQ(concretize(out[0], region), Interval(0.5, 0.5));
}

TEST(Symbolic, TwoLayerCompositionStaysSound) {
  Rng rng(17);
  Eigen::MatrixXd W1 = Eigen::MatrixXd::NullaryExpr(
      4, 3, [&]() { return rng.uniform(-1, 1); });
  Eigen::VectorXd b1 = Eigen::VectorXd::NullaryExpr(
      4, [&]() { return rng.uniform(-1, 1); });
  Eigen::MatrixXd W2 = Eigen::MatrixXd::NullaryExpr(
      2, 4, [&]() { return rng.uniform(-1, 1); });
  Eigen::VectorXd b2 = Eigen::VectorXd::NullaryExpr(
      2, [&]() { return rng.uniform(-1, 1); });

  std::vector<SymBounds> prev;
  for (std::size_t i = 0; i < 3; ++i) prev.push_back(SymBounds::variable(i, 3));
  std::vector<SymBounds> mid = sym_affine(prev, W1, b1);
  std::vector<SymBounds> out = sym_affine(mid, W2, b2);

  Box region({Interval(-1, 1), Interval(0, 0.5), Interval(-0.25, 0.25)});
  std::vector<Interval> bounds;
  for (const auto& s : out) bounds.push_back(concretize(s, region));

  for (int s = 0; s < 2000; ++s) {
    Eigen::VectorXd x = oracle::sample_box(region, rng);
    Eigen::VectorXd y = W2 * (W1 * x + b1) + b2;
    for (Eigen::Index i = 0; i < y.size(); ++i)
      EXPECT_TRUE(bounds[static_cast<std::size_t>(i)].contains(y(i)))
          << "output " << i << " value " << y(i) << " not in "
          << to_string(bounds[static_cast<std::size_t>(i)]);
  }
}

}  // namespace
}  // namespace diffnn
