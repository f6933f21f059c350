#include "diffnn/interval.hpp"

#include <algorithm>
#include <sstream>

namespace diffnn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// TwoSum residual: exact value of (a + b) - fl(a + b).
inline double sum_residual(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

}  // namespace

double add_down(double a, double b) {
  double s = a + b;
  return sum_residual(a, b, s) < 0.0 ? std::nextafter(s, -kInf) : s;
}

double add_up(double a, double b) {
  double s = a + b;
  return sum_residual(a, b, s) > 0.0 ? std::nextafter(s, kInf) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }

double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
  double p = a * b;
  // fma residual is the exact rounding error of the product.
  return std::fma(a, b, -p) < 0.0 ? std::nextafter(p, -kInf) : p;
}

double mul_up(double a, double b) {
  double p = a * b;
  return std::fma(a, b, -p) > 0.0 ? std::nextafter(p, kInf) : p;
}

Interval iv_add(const Interval& a, const Interval& b) {
  return Interval(add_down(a.lo, b.lo), add_up(a.hi, b.hi));
}

Interval iv_sub(const Interval& a, const Interval& b) {
  // [a, b] - [c, d] = [a - d, b - c]
  return Interval(sub_down(a.lo, b.hi), sub_up(a.hi, b.lo));
}

Interval iv_scale(const Interval& a, double c) {
  if (!std::isfinite(c))
    throw std::invalid_argument("iv_scale: scale factor must be finite");
  if (c >= 0.0) return Interval(mul_down(a.lo, c), mul_up(a.hi, c));
  return Interval(mul_down(a.hi, c), mul_up(a.lo, c));
}

Interval iv_mul(const Interval& a, const Interval& b) {
  double lo = mul_down(a.lo, b.lo);
  lo = std::fmin(lo, mul_down(a.lo, b.hi));
  lo = std::fmin(lo, mul_down(a.hi, b.lo));
  lo = std::fmin(lo, mul_down(a.hi, b.hi));
  double hi = mul_up(a.lo, b.lo);
  hi = std::fmax(hi, mul_up(a.lo, b.hi));
  hi = std::fmax(hi, mul_up(a.hi, b.lo));
  hi = std::fmax(hi, mul_up(a.hi, b.hi));
  return Interval(lo, hi);
}

Interval iv_hull(const Interval& a, const Interval& b) {
  return Interval(std::fmin(a.lo, b.lo), std::fmax(a.hi, b.hi));
}

Interval iv_widen(const Interval& a, double eps) {
  if (eps < 0.0) throw std::invalid_argument("iv_widen: eps must be >= 0");
  return Interval(a.lo - eps, a.hi + eps);
}

std::string to_string(const Interval& iv) {
  std::ostringstream os;
  os.precision(17);
  os << "[" << iv.lo << ", " << iv.hi << "]";
  return os.str();
}

std::size_t Box::widest_dim() const {
  std::size_t best = 0;
  double w = -1.0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i].width() > w) {
      w = dims[i].width();
      best = i;
    }
  }
  return best;
}

double Box::max_width() const {
  double w = 0.0;
  for (const auto& d : dims) w = std::fmax(w, d.width());
  return w;
}

std::vector<double> Box::midpoint() const {
  std::vector<double> m(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) m[i] = dims[i].mid();
  return m;
}

}  // namespace diffnn
