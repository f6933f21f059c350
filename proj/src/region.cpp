#include "diffnn/region.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "diffnn/rng.hpp"

namespace diffnn {

RegionSpec RegionSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument(
        "region must look like global:F, targeted:N or file:PATH, got: " + text);
  std::string kind = text.substr(0, colon);
  std::string arg = text.substr(colon + 1);
  RegionSpec spec;
  if (kind == "global") {
    spec.kind = Kind::Global;
    try {
      std::size_t pos = 0;
      spec.fraction = std::stod(arg, &pos);
      if (pos != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid global fraction: " + arg);
    }
    if (!(spec.fraction > 0.0))
      throw std::invalid_argument("global fraction must be positive");
  } else if (kind == "targeted") {
    spec.kind = Kind::Targeted;
    try {
      std::size_t pos = 0;
      spec.count = std::stoi(arg, &pos);
      if (pos != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid targeted count: " + arg);
    }
    if (spec.count < 0)
      throw std::invalid_argument("targeted count must be >= 0");
  } else if (kind == "file") {
    spec.kind = Kind::Explicit;
    spec.path = arg;
    if (spec.path.empty()) throw std::invalid_argument("empty region file path");
  } else {
    throw std::invalid_argument("unknown region kind: " + kind);
  }
  return spec;
}

InputRegion parse_region(const RegionSpec& spec, int input_dim,
                         const Interval& input_range,
                         const std::vector<double>& base) {
  if (input_dim <= 0) throw std::invalid_argument("input dimension must be positive");

  if (spec.kind == RegionSpec::Kind::Explicit) {
    std::ifstream in(spec.path);
    if (!in) throw std::runtime_error("cannot open region file: " + spec.path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(std::string("region parse error: ") + e.what());
    }
    if (!j.is_array() || static_cast<int>(j.size()) != input_dim)
      throw std::runtime_error("region file must list exactly " +
                               std::to_string(input_dim) + " [lo, hi] pairs");
    InputRegion region;
    region.box.dims.reserve(static_cast<std::size_t>(input_dim));
    for (const auto& pair : j) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number())
        throw std::runtime_error("region file entries must be [lo, hi] pairs");
      region.box.dims.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return region;
  }

  if (static_cast<int>(base.size()) != input_dim)
    throw std::invalid_argument("base input length does not match input dimension");

  InputRegion region;
  region.box.dims.reserve(static_cast<std::size_t>(input_dim));
  if (spec.kind == RegionSpec::Kind::Global) {
    double radius = spec.fraction * input_range.width();
    for (double center : base)
      region.box.dims.emplace_back(center - radius, center + radius);
    return region;
  }

  // Targeted: a seeded partial Fisher-Yates pass picks `count` distinct
  // variables that receive the full input range.
  if (spec.count > input_dim)
    throw std::invalid_argument("targeted count exceeds input dimension");
  std::vector<int> idx(static_cast<std::size_t>(input_dim));
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(spec.seed);
  for (int k = 0; k < spec.count; ++k) {
    std::size_t j = static_cast<std::size_t>(k) +
                    rng.index(static_cast<std::size_t>(input_dim - k));
    std::swap(idx[static_cast<std::size_t>(k)], idx[j]);
  }
  std::vector<bool> full(static_cast<std::size_t>(input_dim), false);
  for (int k = 0; k < spec.count; ++k)
    full[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])] = true;
  for (int i = 0; i < input_dim; ++i) {
    if (full[static_cast<std::size_t>(i)])
      region.box.dims.push_back(input_range);
    else
      region.box.dims.emplace_back(base[static_cast<std::size_t>(i)]);
  }
  return region;
}

}  // namespace diffnn
