#include "diffnn/validator.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "diffnn/global_opt.hpp"
#include "diffnn/rng.hpp"
#include "diffnn/surface.hpp"
#include "oracles.hpp"

namespace diffnn {
namespace {

Box zero_diff_box() {
  return Box({Interval(-2, 2), Interval(0, 0), Interval(-3, 3), Interval(0, 0)});
}

Box point_box(double x, double dx, double y, double dy) {
  return Box({Interval(x, x), Interval(dx, dx), Interval(y, y), Interval(dy, dy)});
}

TEST(CheckExceeds, ZeroSurfaceIsUnsat) {
  Verdict v = check_exceeds(SurfaceKind::F1, zero_diff_box(), 0.0, Side::Upper,
                            ValidatorParams{});
  EXPECT_EQ(v.kind, Verdict::Kind::Unsat);
  Verdict w = check_exceeds(SurfaceKind::F1, zero_diff_box(), 0.0, Side::Lower,
                            ValidatorParams{});
  EXPECT_EQ(w.kind, Verdict::Kind::Unsat);
}

TEST(CheckExceeds, PointBoxBothSides) {
  // F2 at (0,0,0,1) evaluates to 0.5*tanh(1) ~ 0.3808.
  Box box = point_box(0, 0, 0, 1);
  double v = 0.5 * std::tanh(1.0);

  Verdict sat = check_exceeds(SurfaceKind::F2, box, v - 0.08, Side::Upper,
                              ValidatorParams{});
  EXPECT_EQ(sat.kind, Verdict::Kind::DeltaSat);
  EXPECT_NEAR(sat.witness_value, v, 1e-12);

  Verdict unsat = check_exceeds(SurfaceKind::F2, box, v + 0.02, Side::Upper,
                                ValidatorParams{});
  EXPECT_EQ(unsat.kind, Verdict::Kind::Unsat);

  Verdict satlo = check_exceeds(SurfaceKind::F2, box, v + 0.08, Side::Lower,
                                ValidatorParams{});
  EXPECT_EQ(satlo.kind, Verdict::Kind::DeltaSat);
  Verdict unsatlo = check_exceeds(SurfaceKind::F2, box, v - 0.02, Side::Lower,
                                  ValidatorParams{});
  EXPECT_EQ(unsatlo.kind, Verdict::Kind::Unsat);
}

TEST(CheckExceeds, AgreesWithGridOracleAroundTrueMax) {
  Rng rng(61);
  for (int rep = 0; rep < 10; ++rep) {
    Box box({oracle::random_interval(rng, -4, 4, 0.2),
             oracle::random_interval(rng, -2, 2, 0.2),
             oracle::random_interval(rng, -4, 4, 0.2),
             oracle::random_interval(rng, -2, 2, 0.2)});
    SurfaceKind k = rep % 2 == 0 ? SurfaceKind::F1 : SurfaceKind::F2;
    auto [gmin, gmax] = oracle::surface_grid_extrema(k, box, 60);

    // Far above the maximum: provably unsatisfiable.
    Verdict hi = check_exceeds(k, box, gmax + 0.05, Side::Upper, ValidatorParams{});
    EXPECT_EQ(hi.kind, Verdict::Kind::Unsat) << to_string(k) << " rep " << rep;

    // Clearly below the maximum: a witness must surface.
    Verdict sat = check_exceeds(k, box, gmax - 0.05, Side::Upper, ValidatorParams{});
    EXPECT_EQ(sat.kind, Verdict::Kind::DeltaSat);

    Verdict lo = check_exceeds(k, box, gmin - 0.05, Side::Lower, ValidatorParams{});
    EXPECT_EQ(lo.kind, Verdict::Kind::Unsat);
    Verdict satlo = check_exceeds(k, box, gmin + 0.05, Side::Lower, ValidatorParams{});
    EXPECT_EQ(satlo.kind, Verdict::Kind::DeltaSat);
  }
}

TEST(ValidateAndAdjust, ZeroCandidateOnZeroSurfaceIsExact) {
  Interval out = validate_and_adjust(SurfaceKind::F1, zero_diff_box(),
                                     Interval(0, 0), ValidatorParams{});
  EXPECT_EQ(out, Interval(0, 0));
}

TEST(ValidateAndAdjust, WidensExactlyOnceOnTheFailingSide) {
  Box box = point_box(0, 0, 0, 1);
  double v = 0.5 * std::tanh(1.0);
  Interval candidate(v - 0.02, v - 0.005);
  ValidatorParams params;  // adjust = 0.01
  Interval out = validate_and_adjust(SurfaceKind::F2, box, candidate, params);
  EXPECT_EQ(out.lo, candidate.lo);             // lower side already valid
  EXPECT_EQ(out.hi, candidate.hi + 0.01);      // upper side widened once
  EXPECT_TRUE(out.contains(candidate));
  EXPECT_TRUE(out.contains(v));
}

TEST(ValidateAndAdjust, ThrowsWhenWideningBudgetExhausted) {
  Box box = point_box(0, 0, 0, 1);
  double v = 0.5 * std::tanh(1.0);
  ValidatorParams params;
  params.widen_cap = 0;
  EXPECT_THROW(validate_and_adjust(SurfaceKind::F2, box,
                                   Interval(v - 0.02, v - 0.005), params),
               ValidationCapExceeded);
}

TEST(ValidateAndAdjust, OutputContainsCandidateAndSamples) {
  Rng rng(71);
  for (int rep = 0; rep < 12; ++rep) {
    Box box({oracle::random_interval(rng, -5, 5, 0.1),
             oracle::random_interval(rng, -2.5, 2.5, 0.1),
             oracle::random_interval(rng, -5, 5, 0.1),
             oracle::random_interval(rng, -2.5, 2.5, 0.1)});
    SurfaceKind k = rep % 3 == 0 ? SurfaceKind::F1 : SurfaceKind::F2;
    OptParams op;
    op.seed = static_cast<std::uint64_t>(rep) + 7;
    ExtremaCandidates cand = de_extremize(k, box, op);
    Interval start = iv_widen(Interval(cand.min_value, cand.max_value), 1e-9);
    Interval out = validate_and_adjust(k, box, start, ValidatorParams{});
    EXPECT_TRUE(out.contains(start));

    for (int s = 0; s < 2000; ++s) {
      double x = rng.uniform(box[0].lo, box[0].hi);
      double dx = rng.uniform(box[1].lo, box[1].hi);
      double y = rng.uniform(box[2].lo, box[2].hi);
      double dy = rng.uniform(box[3].lo, box[3].hi);
      double f = surface_eval(k, x, dx, y, dy);
      // Unsat guarantees are modulo the solver slack delta.
      EXPECT_LE(f, out.hi + ValidatorParams{}.delta);
      EXPECT_GE(f, out.lo - ValidatorParams{}.delta);
    }
  }
}

TEST(ValidateAndAdjust, GridExtremaWithinDelta) {
  Rng rng(83);
  for (int rep = 0; rep < 8; ++rep) {
    Box box({oracle::random_interval(rng, -4, 4, 0.2),
             oracle::random_interval(rng, -2, 2, 0.2),
             oracle::random_interval(rng, -4, 4, 0.2),
             oracle::random_interval(rng, -2, 2, 0.2)});
    SurfaceKind k = rep % 2 == 0 ? SurfaceKind::F1 : SurfaceKind::F2;
    OptParams op;
    op.seed = static_cast<std::uint64_t>(rep) + 17;
    ExtremaCandidates cand = de_extremize(k, box, op);
    Interval out = validate_and_adjust(
        k, box, iv_widen(Interval(cand.min_value, cand.max_value), 1e-9),
        ValidatorParams{});
    auto [gmin, gmax] = oracle::surface_grid_extrema(k, box, 80);
    EXPECT_LE(out.lo - ValidatorParams{}.delta, gmin);
    EXPECT_GE(out.hi + ValidatorParams{}.delta, gmax);
  }
}

}  // namespace
}  // namespace diffnn
