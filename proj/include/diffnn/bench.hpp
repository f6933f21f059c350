#ifndef DIFFNN_BENCH_HPP
#define DIFFNN_BENCH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "diffnn/engine.hpp"
#include "diffnn/network.hpp"
#include "diffnn/region.hpp"

namespace diffnn {

// Batch sweep configuration. Instances come either from `pairs` (explicit
// network files) or, when `pairs` is empty, from `arch`: instance i is a
// freshly generated network paired with its binary16-quantized twin, around
// a seeded base input.
struct BenchmarkConfig {
  std::string arch_text;  // e.g. "rnn:4x8"; ignored when pairs set
  std::vector<std::pair<std::string, std::string>> pairs;
  int instances = 1;
  double epsilon = 1.0;
  std::string region_text = "global:0.01";
  std::uint64_t seed = 1;
  double deadline_seconds = 1800.0;
  std::string out_path;    // empty: do not write a file
  bool wall_timing = true; // false: report 0.000 seconds (byte-stable output)
  int jobs = 1;
};

BenchmarkConfig load_bench_config(const std::string& path);

struct BenchSummary {
  int verified = 0;
  int total = 0;
  double avg_seconds = 0.0;
};

// Verifies every instance and renders a CSV report:
//   instance,verdict,seconds,max_abs_delta
// one row per instance plus a final "#summary,verified,total,avg_seconds"
// line. The report is written to cfg.out_path (when set) and returned via
// csv_out (when non-null). With wall_timing=false the bytes are a pure
// function of the configuration.
BenchSummary run_benchmark(const BenchmarkConfig& cfg,
                           std::string* csv_out = nullptr);

}  // namespace diffnn

#endif  // DIFFNN_BENCH_HPP
