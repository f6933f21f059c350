#include "diffnn/global_opt.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "diffnn/rng.hpp"

namespace diffnn {

namespace {

struct DeResult {
  double value;
  std::array<double, 3> point;
};

// Minimizes f over the 3-D box [lo, hi] with DE/rand/1/bin; maximization
// negates via the `sign` factor.
DeResult de_run(const std::array<double, 3>& lo, const std::array<double, 3>& hi,
                double sign, const OptParams& p, Rng& rng,
                const std::function<double(const std::array<double, 3>&)>& f) {
  const int np = p.population;
  std::vector<std::array<double, 3>> pop(np);
  std::vector<double> score(np);

  DeResult best{};
  best.value = std::numeric_limits<double>::infinity();

  // The surfaces are differences of monotone factors, so their extrema often
  // sit on the box boundary; seeding the corners and the midpoint makes those
  // candidates available from generation zero.
  int seeded = std::min(np, 9);
  int runs = p.restarts + 1;
  for (int run = 0; run < runs; ++run) {
    for (int i = 0; i < np; ++i) {
      if (i < 8 && i < seeded) {
        for (int k = 0; k < 3; ++k) pop[i][k] = (i >> k & 1) ? hi[k] : lo[k];
      } else if (i == 8 && i < seeded) {
        for (int k = 0; k < 3; ++k) pop[i][k] = 0.5 * (lo[k] + hi[k]);
      } else {
        for (int k = 0; k < 3; ++k) pop[i][k] = rng.uniform(lo[k], hi[k]);
      }
      score[i] = sign * f(pop[i]);
      if (score[i] < best.value) best = {score[i], pop[i]};
    }
    for (int g = 0; g < p.generations; ++g) {
      for (int i = 0; i < np; ++i) {
        std::size_t r1 = rng.index(np);
        while (static_cast<int>(r1) == i) r1 = rng.index(np);
        std::size_t r2 = rng.index(np);
        while (static_cast<int>(r2) == i || r2 == r1) r2 = rng.index(np);
        std::size_t r3 = rng.index(np);
        while (static_cast<int>(r3) == i || r3 == r1 || r3 == r2) r3 = rng.index(np);

        std::size_t jrand = rng.index(3);
        std::array<double, 3> trial = pop[i];
        for (std::size_t k = 0; k < 3; ++k) {
          bool take = rng.u01() < p.crossover || k == jrand;
          if (take) {
            double m = pop[r1][k] + p.diff_weight * (pop[r2][k] - pop[r3][k]);
            trial[k] = std::clamp(m, lo[k], hi[k]);
          }
        }
        double s = sign * f(trial);
        if (s <= score[i]) {
          pop[i] = trial;
          score[i] = s;
          if (s < best.value) best = {s, trial};
        }
      }
    }
  }
  best.value *= sign;
  return best;
}

}  // namespace

ExtremaCandidates de_extremize(SurfaceKind kind, const Box& box,
                               const OptParams& p) {
  if (box.size() != 4)
    throw std::invalid_argument("de_extremize: box must have 4 dimensions");
  if (p.population < 4)
    throw std::invalid_argument("de_extremize: population must be >= 4");
  if (!(p.crossover > 0.0 && p.crossover <= 1.0) ||
      !(p.diff_weight > 0.0 && p.diff_weight <= 1.0))
    throw std::invalid_argument("de_extremize: rates must lie in (0, 1]");

  std::array<double, 3> lo{box[0].lo, box[1].lo, box[2].lo};
  std::array<double, 3> hi{box[0].hi, box[1].hi, box[2].hi};
  double dy_lo = box[3].lo;
  double dy_hi = box[3].hi;

  auto f_at = [&](const std::array<double, 3>& v, double dy) {
    return surface_eval(kind, v[0], v[1], v[2], dy);
  };

  Rng rng_min(mix_seed(p.seed, 0x6d696eULL));
  Rng rng_max(mix_seed(p.seed, 0x6d6178ULL));
  DeResult mn = de_run(lo, hi, +1.0, p, rng_min,
                       [&](const std::array<double, 3>& v) { return f_at(v, dy_lo); });
  DeResult mx = de_run(lo, hi, -1.0, p, rng_max,
                       [&](const std::array<double, 3>& v) { return f_at(v, dy_hi); });

  ExtremaCandidates out;
  out.min_value = mn.value;
  out.max_value = mx.value;
  out.min_witness = {mn.point[0], mn.point[1], mn.point[2], dy_lo};
  out.max_witness = {mx.point[0], mx.point[1], mx.point[2], dy_hi};

  // The surfaces increase in dy, so evaluating each best point at the other
  // dy endpoint guarantees min <= max even if the two searches wandered to
  // unrelated corners.
  double cross_max = f_at(mn.point, dy_hi);
  if (cross_max > out.max_value) {
    out.max_value = cross_max;
    out.max_witness = {mn.point[0], mn.point[1], mn.point[2], dy_hi};
  }
  double cross_min = f_at(mx.point, dy_lo);
  if (cross_min < out.min_value) {
    out.min_value = cross_min;
    out.min_witness = {mx.point[0], mx.point[1], mx.point[2], dy_lo};
  }
  return out;
}

}  // namespace diffnn
