#ifndef DIFFNN_SURFACE_HPP
#define DIFFNN_SURFACE_HPP

#include <string>

#include "diffnn/interval.hpp"

namespace diffnn {

// LSTM product-difference surfaces over (x, dx, y, dy):
//   F1: sigmoid(x+dx)*(y+dy)      - sigmoid(x)*y
//   F2: sigmoid(x+dx)*tanh(y+dy)  - sigmoid(x)*tanh(y)
//   H2: same function as F2, used for the hidden-state difference with
//       (x, dx, y, dy) = (o_in, delta o_in, c, delta c)
// All three are increasing in dy (sigmoid >= 0, tanh increasing), which the
// optimizer and grid oracles use to pin dy at a box endpoint.
enum class SurfaceKind { F1, F2, H2 };

const char* to_string(SurfaceKind kind);
SurfaceKind surface_kind_from_string(const std::string& name);

// Pointwise evaluation in plain double arithmetic.
double surface_eval(SurfaceKind kind, double x, double dx, double y, double dy);

// Sound interval enclosure over a 4-D box ordered (x, dx, y, dy). Uses the
// difference rewrite
//   F1 = (sigmoid(x+dx) - sigmoid(x))*y + sigmoid(x+dx)*dy
//   F2 = sigmoid(x+dx)*(tanh(y+dy) - tanh(y)) + (sigmoid(x+dx) - sigmoid(x))*tanh(y)
// so the coupled difference terms go through act_diff_bounds instead of a
// naive two-product subtraction.
Interval surface_bounds(SurfaceKind kind, const Box& box);

}  // namespace diffnn

#endif  // DIFFNN_SURFACE_HPP
