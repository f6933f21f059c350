#include "diffnn/surface.hpp"

#include <cmath>
#include <stdexcept>

#include "diffnn/activation.hpp"

namespace diffnn {

const char* to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::F1: return "f1";
    case SurfaceKind::F2: return "f2";
    case SurfaceKind::H2: return "h2";
  }
  return "?";
}

SurfaceKind surface_kind_from_string(const std::string& name) {
  if (name == "f1") return SurfaceKind::F1;
  if (name == "f2") return SurfaceKind::F2;
  if (name == "h2") return SurfaceKind::H2;
  throw std::invalid_argument("unknown surface: " + name);
}

double surface_eval(SurfaceKind kind, double x, double dx, double y, double dy) {
  double s1 = act_eval(Activation::Sigmoid, x + dx);
  double s0 = act_eval(Activation::Sigmoid, x);
  if (kind == SurfaceKind::F1) return s1 * (y + dy) - s0 * y;
  return s1 * std::tanh(y + dy) - s0 * std::tanh(y);
}

Interval surface_bounds(SurfaceKind kind, const Box& box) {
  if (box.size() != 4)
    throw std::invalid_argument("surface_bounds: box must have 4 dimensions");
  const Interval& X = box[0];
  const Interval& DX = box[1];
  const Interval& Y = box[2];
  const Interval& DY = box[3];
  Interval sig_shift = act_value_bounds(Activation::Sigmoid, iv_add(X, DX));
  Interval sig_diff = act_diff_bounds(Activation::Sigmoid, X, DX);
  if (kind == SurfaceKind::F1)
    return iv_add(iv_mul(sig_diff, Y), iv_mul(sig_shift, DY));
  Interval tanh_diff = act_diff_bounds(Activation::Tanh, Y, DY);
  Interval tanh_base = act_value_bounds(Activation::Tanh, Y);
  return iv_add(iv_mul(sig_shift, tanh_diff), iv_mul(sig_diff, tanh_base));
}

}  // namespace diffnn
