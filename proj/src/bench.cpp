#include "diffnn/bench.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "diffnn/log.hpp"
#include "diffnn/rng.hpp"

namespace diffnn {

namespace {

const Interval kInputRange(-1.0, 1.0);

std::string format_seconds(double s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

std::string format_delta(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

}  // namespace

BenchmarkConfig load_bench_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open benchmark config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("benchmark config parse error: ") + e.what());
  }
  BenchmarkConfig cfg;
  if (j.contains("pairs")) {
    for (const auto& p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 2)
        throw std::runtime_error("pairs entries must be [netA, netB] paths");
      cfg.pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    cfg.instances = static_cast<int>(cfg.pairs.size());
  }
  if (j.contains("arch")) cfg.arch_text = j.at("arch").get<std::string>();
  if (cfg.pairs.empty() && cfg.arch_text.empty())
    throw std::runtime_error("benchmark config needs either arch or pairs");
  if (j.contains("instances") && cfg.pairs.empty())
    cfg.instances = j.at("instances").get<int>();
  if (cfg.instances < 1) throw std::runtime_error("instances must be >= 1");
  if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
  if (!(cfg.epsilon > 0.0)) throw std::runtime_error("epsilon must be positive");
  if (j.contains("region")) cfg.region_text = j.at("region").get<std::string>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("deadline")) cfg.deadline_seconds = j.at("deadline").get<double>();
  if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();
  if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
  if (j.contains("timing")) {
    std::string t = j.at("timing").get<std::string>();
    if (t == "wall")
      cfg.wall_timing = true;
    else if (t == "none")
      cfg.wall_timing = false;
    else
      throw std::runtime_error("timing must be \"wall\" or \"none\"");
  }
  return cfg;
}

BenchSummary run_benchmark(const BenchmarkConfig& cfg, std::string* csv_out) {
  RegionSpec region_spec = RegionSpec::parse(cfg.region_text);
  const bool generated = cfg.pairs.empty();
  ArchSpec arch;
  if (generated) arch = ArchSpec::parse(cfg.arch_text);

  std::ostringstream csv;
  csv << "instance,verdict,seconds,max_abs_delta\n";

  BenchSummary summary;
  summary.total = cfg.instances;
  double total_seconds = 0.0;

  for (int i = 1; i <= cfg.instances; ++i) {
    Network a, b;
    if (generated) {
      a = generate_network(arch, mix_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(i)));
      b = quantize_weights(a);
    } else {
      a = load_network(cfg.pairs[static_cast<std::size_t>(i - 1)].first);
      b = load_network(cfg.pairs[static_cast<std::size_t>(i - 1)].second);
    }
    DiffNetwork dn = diff_weights(a, b);

    int dim = a.total_inputs();
    std::vector<double> base(static_cast<std::size_t>(dim), 0.0);
    Rng base_rng(mix_seed(cfg.seed, 2000 + static_cast<std::uint64_t>(i)));
    for (double& v : base) v = base_rng.uniform(kInputRange.lo, kInputRange.hi);
    RegionSpec rs = region_spec;
    rs.seed = mix_seed(cfg.seed, 3000 + static_cast<std::uint64_t>(i));
    InputRegion region = parse_region(rs, dim, kInputRange, base);

    VerifyOptions opts;
    opts.deadline_seconds = cfg.deadline_seconds;
    opts.jobs = cfg.jobs;
    opts.opt.seed = mix_seed(cfg.seed, 4000 + static_cast<std::uint64_t>(i));
    VerdictReport rep = verify(dn, region, cfg.epsilon, opts);

    bool proved = rep.verdict == VerdictReport::Outcome::Proved;
    if (proved) ++summary.verified;
    total_seconds += rep.elapsed_seconds;

    double max_abs = 0.0;
    for (const Interval& dy : rep.delta_y) max_abs = std::fmax(max_abs, dy.max_abs());
    double seconds = cfg.wall_timing ? rep.elapsed_seconds : 0.0;
    csv << i << ',' << (proved ? "Proved" : "Unknown") << ','
        << format_seconds(seconds) << ',' << format_delta(max_abs) << '\n';
    log_line(LogLevel::Info, "instance " + std::to_string(i) + ": " +
                                 (proved ? "Proved" : "Unknown"));
  }

  double avg = total_seconds / cfg.instances;
  summary.avg_seconds = avg;
  csv << "#summary," << summary.verified << ',' << summary.total << ','
      << format_seconds(cfg.wall_timing ? avg : 0.0) << '\n';

  std::string text = csv.str();
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report: " + cfg.out_path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + cfg.out_path);
  }
  if (csv_out) *csv_out = text;
  return summary;
}

}  // namespace diffnn
