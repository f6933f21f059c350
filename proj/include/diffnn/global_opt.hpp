#ifndef DIFFNN_GLOBAL_OPT_HPP
#define DIFFNN_GLOBAL_OPT_HPP

#include <array>
#include <cstdint>

#include "diffnn/interval.hpp"
#include "diffnn/surface.hpp"

namespace diffnn {

// Differential-evolution settings. Results are a pure function of
// (surface, box, params) including the seed.
struct OptParams {
  int population = 30;
  int generations = 100;
  double crossover = 0.9;    // per-coordinate rate, in (0, 1]
  double diff_weight = 0.7;  // mutation scale, in (0, 1]
  std::uint64_t seed = 0;
  int restarts = 2;          // extra runs beyond the first
};

struct ExtremaCandidates {
  double min_value = 0.0;
  double max_value = 0.0;
  std::array<double, 4> min_witness{};
  std::array<double, 4> max_witness{};
};

// Candidate extrema of the surface over the box (x, dx, y, dy). The search
// pins dy at box[3].lo for the minimum and box[3].hi for the maximum (the
// surfaces are increasing in dy) and runs DE/rand/1/bin over (x, dx, y).
// Candidates are best-found values, not sound bounds; witnesses re-evaluate
// exactly to the reported values. min_value <= max_value always holds:
// each run's best point is also evaluated at the other dy endpoint.
ExtremaCandidates de_extremize(SurfaceKind kind, const Box& box,
                               const OptParams& params);

}  // namespace diffnn

#endif  // DIFFNN_GLOBAL_OPT_HPP
