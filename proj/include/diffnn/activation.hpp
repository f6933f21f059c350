#ifndef DIFFNN_ACTIVATION_HPP
#define DIFFNN_ACTIVATION_HPP

#include <string>

#include "diffnn/interval.hpp"

namespace diffnn {

enum class Activation { Sigmoid, Tanh };

Activation activation_from_string(const std::string& name);
const char* to_string(Activation act);

// Numerically stable scalar evaluation (round-to-nearest).
double act_eval(Activation act, double x);

// Directed evaluations: guaranteed at or below / above the exact value,
// clamped to the activation's closed range. Exact at x = 0.
double act_eval_down(Activation act, double x);
double act_eval_up(Activation act, double x);

// [act(x.lo), act(x.hi)] with outward rounding; both activations are
// monotonically increasing.
Interval act_value_bounds(Activation act, const Interval& x);

// Bounds query for the difference f(x, d) = act(x + d) - act(x) over
// x in .x, d in .d.
struct DiffBoundQuery {
  Activation act;
  Interval x;
  Interval d;
};

// Sound, near-exact [min, max] of act(x+d) - act(x) over the query box.
//
// f is increasing in d, so the minimum sits at d = d.lo and the maximum at
// d = d.hi. For fixed d the extremum candidates in x are the box endpoints
// and the critical point x = -d/2, where act'(x+d) = act'(x) (the derivative
// of both activations is even around its peak): for d >= 0 the slice is a
// bell with peak act(d/2) - act(-d/2), for d < 0 a valley with the mirrored
// trough. Evaluating f at {x.lo, x.hi, clamp(-d/2)} x {d.lo, d.hi} with
// directed rounding covers every case.
//
// The result is clamped to the difference range: [-1, 1] for Sigmoid,
// [-2, 2] for Tanh, and to the sign implied by d (d.lo >= 0 forces lo >= 0,
// d.hi <= 0 forces hi <= 0).
Interval act_diff_bounds(const DiffBoundQuery& q);
Interval act_diff_bounds(Activation act, const Interval& x, const Interval& d);

}  // namespace diffnn

#endif  // DIFFNN_ACTIVATION_HPP
