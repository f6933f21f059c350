#include "diffnn/symbolic.hpp"

#include <stdexcept>

namespace diffnn {

SymBounds::SymBounds(AffineExpr lo, AffineExpr up)
    : lower(std::move(lo)), upper(std::move(up)) {
  if (lower.coeffs.size() != upper.coeffs.size())
    throw std::invalid_argument("SymBounds: coefficient lengths differ");
}

SymBounds SymBounds::variable(std::size_t index, std::size_t nvars) {
  if (index >= nvars) throw std::invalid_argument("SymBounds: variable index out of range");
  AffineExpr e(nvars);
  e.coeffs[index] = Interval(1.0);
  return SymBounds(e, e);
}

SymBounds SymBounds::constant(const Interval& value, std::size_t nvars) {
  AffineExpr lo(nvars), up(nvars);
  lo.constant = Interval(value.lo);
  up.constant = Interval(value.hi);
  return SymBounds(std::move(lo), std::move(up));
}

std::vector<SymBounds> sym_affine(const std::vector<SymBounds>& prev,
                                  const Eigen::MatrixXd& W,
                                  const Eigen::VectorXd& bias) {
  const auto rows = static_cast<std::size_t>(W.rows());
  const auto cols = static_cast<std::size_t>(W.cols());
  if (prev.size() != cols)
    throw std::invalid_argument("sym_affine: W columns do not match input count");
  if (static_cast<std::size_t>(bias.size()) != rows)
    throw std::invalid_argument("sym_affine: bias length does not match W rows");
  std::size_t nvars = prev.empty() ? 0 : prev[0].nvars();
  for (const auto& s : prev)
    if (s.nvars() != nvars)
      throw std::invalid_argument("sym_affine: inconsistent variable counts");

  std::vector<SymBounds> out;
  out.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    AffineExpr lo(nvars), up(nvars);
    lo.constant = Interval(bias(static_cast<Eigen::Index>(i)));
    up.constant = lo.constant;
    for (std::size_t j = 0; j < cols; ++j) {
      double w = W(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      // w >= 0 keeps bound directions, w < 0 swaps them.
      const AffineExpr& for_lo = (w >= 0.0) ? prev[j].lower : prev[j].upper;
      const AffineExpr& for_up = (w >= 0.0) ? prev[j].upper : prev[j].lower;
      for (std::size_t k = 0; k < nvars; ++k) {
        lo.coeffs[k] = iv_add(lo.coeffs[k], iv_scale(for_lo.coeffs[k], w));
        up.coeffs[k] = iv_add(up.coeffs[k], iv_scale(for_up.coeffs[k], w));
      }
      lo.constant = iv_add(lo.constant, iv_scale(for_lo.constant, w));
      up.constant = iv_add(up.constant, iv_scale(for_up.constant, w));
    }
    out.emplace_back(std::move(lo), std::move(up));
  }
  return out;
}

Interval concretize(const SymBounds& s, const Box& region) {
  if (s.nvars() != region.size())
    throw std::invalid_argument("concretize: variable count does not match region");
  double lo = s.lower.constant.lo;
  double hi = s.upper.constant.hi;
  for (std::size_t k = 0; k < region.size(); ++k) {
    lo = add_down(lo, iv_mul(s.lower.coeffs[k], region[k]).lo);
    hi = add_up(hi, iv_mul(s.upper.coeffs[k], region[k]).hi);
  }
  return Interval(lo, hi);
}

}  // namespace diffnn
