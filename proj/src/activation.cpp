#include "diffnn/activation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diffnn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Margin covering the evaluation error of exp/tanh plus the composition
// arithmetic; glibc keeps these well under 2 ulps each. 8 ulps leaves the
// enclosure strictly outside any point sample whose own argument rounding
// works against the bound.
constexpr int kEvalUlps = 8;

double step_ulps(double v, int n, double dir) {
  for (int i = 0; i < n; ++i) v = std::nextafter(v, dir);
  return v;
}

// Stable logistic: never exponentiates a positive argument.
double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Activation activation_from_string(const std::string& name) {
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "tanh") return Activation::Tanh;
  throw std::invalid_argument("unknown activation: " + name);
}

const char* to_string(Activation act) {
  return act == Activation::Sigmoid ? "sigmoid" : "tanh";
}

double act_eval(Activation act, double x) {
  return act == Activation::Sigmoid ? sigmoid(x) : std::tanh(x);
}

double act_eval_down(Activation act, double x) {
  if (x == 0.0) return act == Activation::Sigmoid ? 0.5 : 0.0;
  double v = step_ulps(act_eval(act, x), kEvalUlps, -kInf);
  double floor = act == Activation::Sigmoid ? 0.0 : -1.0;
  return std::fmax(v, floor);
}

double act_eval_up(Activation act, double x) {
  if (x == 0.0) return act == Activation::Sigmoid ? 0.5 : 0.0;
  double v = step_ulps(act_eval(act, x), kEvalUlps, kInf);
  return std::fmin(v, 1.0);
}

Interval act_value_bounds(Activation act, const Interval& x) {
  return Interval(act_eval_down(act, x.lo), act_eval_up(act, x.hi));
}

Interval act_diff_bounds(const DiffBoundQuery& q) {
  const Interval& X = q.x;
  const Interval& D = q.d;
  if (D.lo == 0.0 && D.hi == 0.0) return Interval(0.0, 0.0);

  double lo = kInf, hi = -kInf;
  for (double d : {D.lo, D.hi}) {
    double crit = std::clamp(-d / 2.0, X.lo, X.hi);
    for (double x : {X.lo, X.hi, crit}) {
      // Directed enclosure of f(x, d) = act(x+d) - act(x) at this candidate.
      double flo = sub_down(act_eval_down(q.act, add_down(x, d)),
                            act_eval_up(q.act, x));
      double fhi = sub_up(act_eval_up(q.act, add_up(x, d)),
                          act_eval_down(q.act, x));
      lo = std::fmin(lo, flo);
      hi = std::fmax(hi, fhi);
    }
  }

  if (D.lo >= 0.0) lo = std::fmax(lo, 0.0);
  if (D.hi <= 0.0) hi = std::fmin(hi, 0.0);
  double cap = q.act == Activation::Sigmoid ? 1.0 : 2.0;
  lo = std::fmax(lo, -cap);
  hi = std::fmin(hi, cap);
  return Interval(lo, hi);
}

Interval act_diff_bounds(Activation act, const Interval& x, const Interval& d) {
  return act_diff_bounds(DiffBoundQuery{act, x, d});
}

}  // namespace diffnn
