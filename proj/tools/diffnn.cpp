// Command-line front end: single-pair verification, benchmark sweeps,
// fixture generation, and direct access to the surface bound machinery.
//
// Exit codes: 0 = Proved (or command succeeded), 1 = Unknown,
// 2 = usage / parse / structural error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "diffnn/bench.hpp"
#include "diffnn/engine.hpp"
#include "diffnn/global_opt.hpp"
#include "diffnn/log.hpp"
#include "diffnn/network.hpp"
#include "diffnn/region.hpp"
#include "diffnn/validator.hpp"

namespace {

constexpr int kExitProved = 0;
constexpr int kExitUnknown = 1;
constexpr int kExitError = 2;

const diffnn::Interval kInputRange(-1.0, 1.0);

struct VerifyArgs {
  std::string net_a, net_b;
  std::string region = "global:0.01";
  double epsilon = 0.0;
  double deadline = 1800.0;
  int jobs = 1;
  std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& args) {
  diffnn::Network a = diffnn::load_network(args.net_a);
  diffnn::Network b = diffnn::load_network(args.net_b);
  diffnn::DiffNetwork dn = diffnn::diff_weights(a, b);

  diffnn::RegionSpec spec = diffnn::RegionSpec::parse(args.region);
  spec.seed = args.seed;
  std::vector<double> base(static_cast<std::size_t>(a.total_inputs()), 0.0);
  diffnn::InputRegion region =
      diffnn::parse_region(spec, a.total_inputs(), kInputRange, base);

  diffnn::VerifyOptions opts;
  opts.deadline_seconds = args.deadline;
  opts.jobs = args.jobs;
  opts.opt.seed = args.seed;
  diffnn::VerdictReport rep = diffnn::verify(dn, region, args.epsilon, opts);

  bool proved = rep.verdict == diffnn::VerdictReport::Outcome::Proved;
  std::cout << "verdict: " << (proved ? "Proved" : "Unknown") << "\n";
  for (std::size_t j = 0; j < rep.delta_y.size(); ++j)
    std::cout << "delta_y[" << j << "]: " << diffnn::to_string(rep.delta_y[j])
              << "  max_abs: " << rep.delta_y[j].max_abs() << "\n";
  std::cout << "epsilon: " << rep.epsilon << "\n";
  std::printf("elapsed_seconds: %.3f\n", rep.elapsed_seconds);
  if (!rep.note.empty()) std::cout << "note: " << rep.note << "\n";
  return proved ? kExitProved : kExitUnknown;
}

int run_bench(const std::string& config_path) {
  diffnn::BenchmarkConfig cfg = diffnn::load_bench_config(config_path);
  diffnn::BenchSummary summary = diffnn::run_benchmark(cfg);
  std::cout << "verified " << summary.verified << "/" << summary.total;
  std::printf(", avg %.3f s\n", summary.avg_seconds);
  if (!cfg.out_path.empty())
    std::cout << "report written to " << cfg.out_path << "\n";
  return kExitProved;
}

int run_gen(const std::string& arch_text, std::uint64_t seed,
            const std::string& out, const std::string& quantize_out) {
  diffnn::ArchSpec spec = diffnn::ArchSpec::parse(arch_text);
  diffnn::Network net = diffnn::generate_network(spec, seed);
  diffnn::save_network(net, out);
  std::cout << "wrote " << out << "\n";
  if (!quantize_out.empty()) {
    int clamped = 0;
    diffnn::Network q = diffnn::quantize_weights(net, &clamped);
    if (clamped > 0)
      std::cerr << "warning: " << clamped
                << " weights exceeded the binary16 range and were clamped\n";
    diffnn::save_network(q, quantize_out);
    std::cout << "wrote " << quantize_out << "\n";
  }
  return kExitProved;
}

// Parses "x,lo,hi;dx,lo,hi;y,lo,hi;dy,lo,hi" (names in any order).
diffnn::Box parse_surface_box(const std::string& text) {
  std::vector<diffnn::Interval> dims(4, diffnn::Interval(0.0));
  std::vector<bool> seen(4, false);
  std::istringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ';')) {
    if (part.empty()) continue;
    std::istringstream fields(part);
    std::string name, lo_s, hi_s;
    if (!std::getline(fields, name, ',') || !std::getline(fields, lo_s, ',') ||
        !std::getline(fields, hi_s))
      throw std::invalid_argument("box entries must be name,lo,hi — got: " + part);
    int idx;
    if (name == "x")
      idx = 0;
    else if (name == "dx")
      idx = 1;
    else if (name == "y")
      idx = 2;
    else if (name == "dy")
      idx = 3;
    else
      throw std::invalid_argument("box variable must be x, dx, y or dy: " + name);
    dims[static_cast<std::size_t>(idx)] =
        diffnn::Interval(std::stod(lo_s), std::stod(hi_s));
    seen[static_cast<std::size_t>(idx)] = true;
  }
  for (int i = 0; i < 4; ++i)
    if (!seen[static_cast<std::size_t>(i)])
      throw std::invalid_argument("box must cover x, dx, y and dy");
  return diffnn::Box(std::move(dims));
}

int run_bounds(const std::string& surface, const std::string& box_text,
               std::uint64_t seed) {
  diffnn::SurfaceKind kind = diffnn::surface_kind_from_string(surface);
  diffnn::Box box = parse_surface_box(box_text);

  diffnn::OptParams opt;
  opt.seed = seed;
  diffnn::ExtremaCandidates cand = diffnn::de_extremize(kind, box, opt);
  std::printf("candidates: min %.12g at (%.6g, %.6g, %.6g, %.6g)\n",
              cand.min_value, cand.min_witness[0], cand.min_witness[1],
              cand.min_witness[2], cand.min_witness[3]);
  std::printf("            max %.12g at (%.6g, %.6g, %.6g, %.6g)\n",
              cand.max_value, cand.max_witness[0], cand.max_witness[1],
              cand.max_witness[2], cand.max_witness[3]);

  diffnn::ValidatorParams val;
  diffnn::Interval validated = diffnn::validate_and_adjust(
      kind, box,
      diffnn::iv_widen(diffnn::Interval(cand.min_value, cand.max_value), 1e-9),
      val);
  std::cout << "validated bounds: " << diffnn::to_string(validated) << "\n";
  return kExitProved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differential verification of structurally identical neural networks"};
  app.require_subcommand(1);

  VerifyArgs vargs;
  CLI::App* verify = app.add_subcommand("verify", "verify one network pair");
  verify->add_option("--net-a", vargs.net_a, "first network file")->required();
  verify->add_option("--net-b", vargs.net_b, "second network file")->required();
  verify->add_option("--region", vargs.region,
                     "global:F | targeted:N | file:PATH (default global:0.01)");
  verify->add_option("--epsilon", vargs.epsilon, "difference threshold")->required();
  verify->add_option("--deadline", vargs.deadline, "time budget in seconds");
  verify->add_option("--jobs", vargs.jobs, "parallel per-neuron workers");
  verify->add_option("--seed", vargs.seed, "seed for targeted regions and the optimizer");

  std::string bench_config;
  CLI::App* bench = app.add_subcommand("bench", "run a benchmark sweep");
  bench->add_option("--config", bench_config, "benchmark config file")->required();

  std::string gen_arch, gen_out, gen_qout;
  std::uint64_t gen_seed = 0;
  CLI::App* gen = app.add_subcommand("gen", "generate a benchmark network");
  gen->add_option("--arch", gen_arch, "architecture, e.g. rnn:4x8")->required();
  gen->add_option("--seed", gen_seed, "generation seed")->required();
  gen->add_option("--out", gen_out, "output network file")->required();
  gen->add_option("--quantize-out", gen_qout, "also write the binary16-quantized twin");

  std::string bsurface, bbox;
  std::uint64_t bseed = 0;
  CLI::App* bounds = app.add_subcommand("bounds", "bound one difference surface over a box");
  bounds->add_option("--surface", bsurface, "f1 | f2 | h2")->required();
  bounds->add_option("--box", bbox, "\"x,lo,hi;dx,lo,hi;y,lo,hi;dy,lo,hi\"")->required();
  bounds->add_option("--seed", bseed, "optimizer seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  }

  try {
    if (verify->parsed()) return run_verify(vargs);
    if (bench->parsed()) return run_bench(bench_config);
    if (gen->parsed()) return run_gen(gen_arch, gen_seed, gen_out, gen_qout);
    if (bounds->parsed()) return run_bounds(bsurface, bbox, bseed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
