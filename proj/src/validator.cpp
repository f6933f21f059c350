#include "diffnn/validator.hpp"

#include <string>
#include <vector>

namespace diffnn {

Verdict check_exceeds(SurfaceKind kind, const Box& box, double bound, Side side,
                      const ValidatorParams& p) {
  struct Node {
    Box box;
    int depth;
  };
  std::vector<Node> stack;
  stack.push_back({box, 0});
  long nodes = 0;

  while (!stack.empty()) {
    Node nd = std::move(stack.back());
    stack.pop_back();
    ++nodes;

    Interval iv = surface_bounds(kind, nd.box);
    bool prunable = side == Side::Upper ? iv.hi <= bound + p.delta
                                        : iv.lo >= bound - p.delta;
    if (prunable) continue;

    std::vector<double> mid = nd.box.midpoint();
    double v = surface_eval(kind, mid[0], mid[1], mid[2], mid[3]);
    bool violates = side == Side::Upper ? v > bound : v < bound;
    if (violates) {
      Verdict out;
      out.kind = Verdict::Kind::DeltaSat;
      out.witness_box = nd.box;
      out.witness_value = v;
      return out;
    }
    if (nd.depth >= p.max_depth || nodes >= p.max_nodes ||
        nd.box.max_width() == 0.0) {
      // Cannot refine further, but interval evaluation still straddles the
      // bound: conservative DeltaSat.
      Verdict out;
      out.kind = Verdict::Kind::DeltaSat;
      out.witness_box = nd.box;
      out.witness_value = side == Side::Upper ? iv.hi : iv.lo;
      return out;
    }

    std::size_t k = nd.box.widest_dim();
    double split = nd.box[k].mid();
    if (!(nd.box[k].lo < split && split < nd.box[k].hi)) {
      Verdict out;
      out.kind = Verdict::Kind::DeltaSat;
      out.witness_box = nd.box;
      out.witness_value = side == Side::Upper ? iv.hi : iv.lo;
      return out;
    }
    Node left{nd.box, nd.depth + 1};
    Node right{nd.box, nd.depth + 1};
    left.box[k] = Interval(nd.box[k].lo, split);
    right.box[k] = Interval(split, nd.box[k].hi);
    stack.push_back(std::move(right));
    stack.push_back(std::move(left));
  }
  return Verdict{};
}

Interval validate_and_adjust(SurfaceKind kind, const Box& box,
                             const Interval& candidate,
                             const ValidatorParams& p) {
  double hi = candidate.hi;
  int iters = 0;
  while (check_exceeds(kind, box, hi, Side::Upper, p).kind ==
         Verdict::Kind::DeltaSat) {
    if (++iters > p.widen_cap)
      throw ValidationCapExceeded("upper bound failed to validate after " +
                                  std::to_string(p.widen_cap) + " widenings");
    hi += p.adjust;
  }
  double lo = candidate.lo;
  iters = 0;
  while (check_exceeds(kind, box, lo, Side::Lower, p).kind ==
         Verdict::Kind::DeltaSat) {
    if (++iters > p.widen_cap)
      throw ValidationCapExceeded("lower bound failed to validate after " +
                                  std::to_string(p.widen_cap) + " widenings");
    lo -= p.adjust;
  }
  return Interval(lo, hi);
}

}  // namespace diffnn
