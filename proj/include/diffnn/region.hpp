#ifndef DIFFNN_REGION_HPP
#define DIFFNN_REGION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "diffnn/interval.hpp"
#include "diffnn/network.hpp"

namespace diffnn {

// Region construction recipes:
//   Global(fraction)      every variable: base +/- fraction*width(input_range)
//   Targeted(count, seed) `count` seeded distinct variables get the full
//                         input_range; the rest stay at their base point
//   Explicit(path)        per-variable intervals from a JSON file
struct RegionSpec {
  enum class Kind { Global, Targeted, Explicit };
  Kind kind = Kind::Global;
  double fraction = 0.01;   // Global
  int count = 0;            // Targeted
  std::uint64_t seed = 0;   // Targeted variable choice
  std::string path;         // Explicit

  // Parses "global:F", "targeted:N" or "file:PATH".
  static RegionSpec parse(const std::string& text);
};

// Builds the boxed region over input_dim flattened variables around the base
// input. The Explicit kind reads a JSON array of [lo, hi] pairs and ignores
// base/input_range.
InputRegion parse_region(const RegionSpec& spec, int input_dim,
                         const Interval& input_range,
                         const std::vector<double>& base);

}  // namespace diffnn

#endif  // DIFFNN_REGION_HPP
