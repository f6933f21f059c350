#ifndef DIFFNN_ENGINE_HPP
#define DIFFNN_ENGINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "diffnn/global_opt.hpp"
#include "diffnn/interval.hpp"
#include "diffnn/network.hpp"
#include "diffnn/validator.hpp"

namespace diffnn {

// Per-step bundle of value bounds (for the reference network) and difference
// bounds between the two networks. Recurrent pipelines start every vector at
// exactly [0, 0].
struct LayerState {
  std::vector<Interval> h, dh;
  std::vector<Interval> a, da;  // rnn pre-activation value / difference

  // LSTM only.
  std::vector<Interval> c, c_prev, dc;
  std::vector<Interval> i_in, f_in, g_in, o_in;
  std::vector<Interval> di_in, df_in, dg_in, do_in;
};

// Zero-initialized state sized for the network.
LayerState init_state(const Network& net);

struct VerifyOptions {
  OptParams opt;         // DE settings for LSTM difference surfaces
  ValidatorParams val;
  double deadline_seconds = 1800.0;
  int jobs = 1;          // parallel per-neuron LSTM bound computations
};

struct VerdictReport {
  enum class Outcome { Proved, Unknown };
  Outcome verdict = Outcome::Unknown;
  std::vector<Interval> delta_y;
  double epsilon = 0.0;
  double elapsed_seconds = 0.0;
  std::vector<double> max_diff_width;  // max difference-bound width per step/layer
  std::string note;                    // diagnostic when Unknown
};

// delta a(t) = WD_hx x(t) + W'_hh dh(t-1) + WD_hh h(t-1) + bD_h, where WD are
// the weight-difference enclosures of dn and W' the second network's weights.
std::vector<Interval> affine_diff_rnn(const DiffNetwork& dn,
                                      const std::vector<Interval>& x_t,
                                      const std::vector<Interval>& h_prev,
                                      const std::vector<Interval>& dh_prev);

// Advances the reference network's value bounds by one step. RNN: fills
// state.a and state.h. LSTM: fills gate pre-activations, saves state.c into
// state.c_prev, then updates state.c and state.h via
//   c(t) = sig(f_in)*c(t-1) + sig(i_in)*tanh(g_in)
//   h(t) = sig(o_in)*tanh(c(t))
// The affine parts go through symbolic bounds over this step's inputs.
void value_bounds_step(const Network& net, const std::vector<Interval>& x_t,
                       LayerState& state);

// Per-neuron activation difference: delta h = act(a + da) - act(a).
std::vector<Interval> nonlinear_diff_rnn(Activation act,
                                         const std::vector<Interval>& a_bounds,
                                         const std::vector<Interval>& da);

struct LstmDiffResult {
  std::vector<Interval> dc, dh;
};

// Per-neuron LSTM difference bounds. Each neuron solves three boxed surface
// problems (optimizer candidates validated by branch-and-prune):
//   dc1 over F1(f_in, df_in, c(t-1), dc(t-1))
//   dc2 over F2(i_in, di_in, g_in, dg_in)        with dc = dc1 + dc2
//   dh  over H2(o_in, do_in, c(t),  dc(t))
// Boxes whose difference dimensions are exactly [0,0] short-circuit to
// [0,0]: both surfaces vanish identically there. Throws
// ValidationCapExceeded when a bound refuses to validate.
LstmDiffResult lstm_cell_diff(const LayerState& state,
                              const std::vector<Interval>& di_in,
                              const std::vector<Interval>& df_in,
                              const std::vector<Interval>& dg_in,
                              const std::vector<Interval>& do_in,
                              const std::vector<Interval>& dc_prev,
                              const OptParams& opt, const ValidatorParams& val,
                              std::uint64_t step_seed, int jobs);

// delta y = W'_hy dh(T) + WD_hy h(T) + bD_y.
std::vector<Interval> output_diff(const DiffNetwork& dn,
                                  const std::vector<Interval>& h_T,
                                  const std::vector<Interval>& dh_T);

// Value-only forward pass; used for diagnostics and as the naive baseline
// (subtracting two per-network output bounds).
std::vector<Interval> output_value_bounds(const Network& net,
                                          const InputRegion& region);

// Full differential verification of a network pair over a boxed region:
// Proved iff max(|delta y_j|) < epsilon for every output j. Unknown on
// epsilon <= 0, deadline exhaustion, or validator failure.
VerdictReport verify(const DiffNetwork& dn, const InputRegion& region,
                     double epsilon, const VerifyOptions& opts);

}  // namespace diffnn

#endif  // DIFFNN_ENGINE_HPP
