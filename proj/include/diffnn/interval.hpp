#ifndef DIFFNN_INTERVAL_HPP
#define DIFFNN_INTERVAL_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace diffnn {

// Directed-rounding scalar primitives. Results are computed in
// round-to-nearest and widened by one ulp only when the error-free
// transformation (TwoSum / fma residual) shows that rounding occurred.
// This keeps exactly representable results exact, which several interval
// identities rely on, while staying sound in the inexact case.
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);

// Closed interval [lo, hi] with finite endpoints.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double point) : Interval(point, point) {}
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(std::isfinite(l) && std::isfinite(h)))
      throw std::invalid_argument("Interval endpoints must be finite");
    if (l > h)
      throw std::invalid_argument("Interval requires lo <= hi");
  }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  double max_abs() const { return std::fmax(std::fabs(lo), std::fabs(hi)); }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool is_point() const { return lo == hi; }

  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
  bool operator!=(const Interval& o) const { return !(*this == o); }
};

Interval iv_add(const Interval& a, const Interval& b);
Interval iv_sub(const Interval& a, const Interval& b);
Interval iv_scale(const Interval& a, double c);
Interval iv_mul(const Interval& a, const Interval& b);

// Smallest interval containing both operands.
Interval iv_hull(const Interval& a, const Interval& b);

// Widens both endpoints outward by `eps` (>= 0).
Interval iv_widen(const Interval& a, double eps);

std::string to_string(const Interval& iv);

// Axis-aligned box: one interval per optimization variable.
struct Box {
  std::vector<Interval> dims;

  Box() = default;
  explicit Box(std::vector<Interval> d) : dims(std::move(d)) {}

  std::size_t size() const { return dims.size(); }
  Interval& operator[](std::size_t i) { return dims[i]; }
  const Interval& operator[](std::size_t i) const { return dims[i]; }

  // Index of the widest dimension.
  std::size_t widest_dim() const;
  double max_width() const;
  std::vector<double> midpoint() const;
};

}  // namespace diffnn

#endif  // DIFFNN_INTERVAL_HPP
