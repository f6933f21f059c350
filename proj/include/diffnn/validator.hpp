#ifndef DIFFNN_VALIDATOR_HPP
#define DIFFNN_VALIDATOR_HPP

#include <stdexcept>

#include "diffnn/interval.hpp"
#include "diffnn/surface.hpp"

namespace diffnn {

struct ValidatorParams {
  double delta = 1e-4;     // numerical slack on unsat verdicts
  int max_depth = 40;      // bisection depth limit
  double adjust = 0.01;    // widening step per failed validation
  int widen_cap = 200;     // widening iterations before giving up
  long max_nodes = 50000;  // branch-and-prune node budget per query
};

enum class Side { Upper, Lower };

// Unsat is a sound proof: no point of the box violates the bound by more
// than delta. DeltaSat carries the subbox (and value) that resisted pruning;
// it may be conservative (interval evaluation straddled the bound at the
// depth or node limit).
struct Verdict {
  enum class Kind { Unsat, DeltaSat };
  Kind kind = Kind::Unsat;
  Box witness_box;
  double witness_value = 0.0;
};

// Checks satisfiability of f > bound (side Upper) or f < bound (side Lower)
// over the box by interval branch-and-prune: bisect the widest dimension,
// prune subboxes whose interval evaluation cannot violate the bound by more
// than delta, report DeltaSat on a midpoint violation or on hitting the
// depth/node limits. Unsat implies: for all points, f <= bound + delta
// (Upper) resp. f >= bound - delta (Lower).
Verdict check_exceeds(SurfaceKind kind, const Box& box, double bound, Side side,
                      const ValidatorParams& params);

// Raised when the widening loop exceeds params.widen_cap; callers should
// treat the affected verification instance as Unknown.
struct ValidationCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Widens the candidate interval by params.adjust per failed check until both
// check_exceeds(Upper, hi) and check_exceeds(Lower, lo) return Unsat. The
// result always contains the candidate.
Interval validate_and_adjust(SurfaceKind kind, const Box& box,
                             const Interval& candidate,
                             const ValidatorParams& params);

}  // namespace diffnn

#endif  // DIFFNN_VALIDATOR_HPP
