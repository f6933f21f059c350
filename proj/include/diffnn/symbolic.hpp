#ifndef DIFFNN_SYMBOLIC_HPP
#define DIFFNN_SYMBOLIC_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "diffnn/interval.hpp"

namespace diffnn {

// Affine expression c0 + sum_i coeffs[i]*x_i over region variables. Each
// coefficient is kept as an interval enclosing the exact real coefficient,
// so rounding during coefficient arithmetic stays sound.
struct AffineExpr {
  std::vector<Interval> coeffs;
  Interval constant;

  AffineExpr() : constant(0.0) {}
  explicit AffineExpr(std::size_t nvars) : coeffs(nvars), constant(0.0) {}
};

// Symbolic lower/upper bounds on one scalar quantity: for every point of the
// associated region, lower(x) <= value <= upper(x).
struct SymBounds {
  AffineExpr lower;
  AffineExpr upper;

  SymBounds() = default;
  SymBounds(AffineExpr lo, AffineExpr up);

  std::size_t nvars() const { return lower.coeffs.size(); }

  // The region variable x_index itself: bounds [x_i, x_i].
  static SymBounds variable(std::size_t index, std::size_t nvars);
  // A known concrete range, carried with zero coefficients.
  static SymBounds constant(const Interval& value, std::size_t nvars);
};

// Sound symbolic bounds for W*prev + bias. Row i consumes prev[j] with weight
// W(i,j): positive weights keep bound directions, negative weights swap them.
std::vector<SymBounds> sym_affine(const std::vector<SymBounds>& prev,
                                  const Eigen::MatrixXd& W,
                                  const Eigen::VectorXd& bias);

// Concrete interval for s over the box. Affine expressions are extremized at
// the box corner picked per coefficient sign (iv_mul handles the selection),
// with directed rounding on the accumulation.
Interval concretize(const SymBounds& s, const Box& region);

}  // namespace diffnn

#endif  // DIFFNN_SYMBOLIC_HPP
