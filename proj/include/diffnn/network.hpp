#ifndef DIFFNN_NETWORK_HPP
#define DIFFNN_NETWORK_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diffnn/activation.hpp"
#include "diffnn/interval.hpp"

namespace diffnn {

enum class ArchKind { FeedForward, VanillaRNN, LSTM };

const char* to_string(ArchKind kind);
ArchKind arch_kind_from_string(const std::string& name);

// Parsed "family:AxB[xC[xD]]" architecture text.
//   ffnn:DxW[xI[xO]] -> D hidden layers of width W, input I (default W),
//                       output O (default 2)
//   rnn:TxH[xI[xO]]  -> T time steps, hidden size H, input size I
//                       (default H), output size O (default 2)
//   lstm:TxH[xI[xO]] -> same shape parameters as rnn
struct ArchSpec {
  ArchKind kind = ArchKind::VanillaRNN;
  int steps = 1;   // rnn/lstm time steps; ffnn: hidden layer count
  int hidden = 1;  // rnn/lstm hidden size;  ffnn: hidden layer width
  int input = 1;
  int output = 2;

  static ArchSpec parse(const std::string& text);
};

struct Network {
  ArchKind kind = ArchKind::VanillaRNN;
  Activation act = Activation::Sigmoid;
  int input = 0;
  int hidden = 0;
  int output = 0;
  int steps = 1;

  // FeedForward: widths [input, hidden..., output]; Ws[l] maps width
  // layers[l] -> layers[l+1]; every layer but the last is followed by the
  // activation, the last is affine.
  std::vector<int> layers;
  std::vector<Eigen::MatrixXd> Ws;
  std::vector<Eigen::VectorXd> bs;

  // VanillaRNN: h(t) = act(W_hx x(t) + W_hh h(t-1) + b_h), y = W_hy h(T) + b_y.
  Eigen::MatrixXd W_hx, W_hh, W_hy;
  Eigen::VectorXd b_h, b_y;

  // LSTM gates (i, f, g, o): v_in(t) = W_vx x(t) + W_vh h(t-1) + b_v.
  Eigen::MatrixXd W_ix, W_ih, W_fx, W_fh, W_gx, W_gh, W_ox, W_oh;
  Eigen::VectorXd b_i, b_f, b_g, b_o;

  Eigen::VectorXd h0, c0;  // initial states; c0 used by LSTM only

  // Flattened input variable count: input*steps for recurrent nets,
  // layers[0] for feed-forward ones.
  int total_inputs() const;

  // Structural similarity: same kind, dimensions, activation and initial
  // states. When it fails and why != nullptr, a reason is stored there.
  bool same_structure(const Network& o, std::string* why = nullptr) const;
};

// One parameter matrix/vector with its canonical name and init fan-in.
// Generation, serialization, quantization and diffing all follow the order
// returned by param_refs.
struct ParamRef {
  std::string name;
  Eigen::MatrixXd* mat = nullptr;  // exactly one of mat/vec is set
  Eigen::VectorXd* vec = nullptr;
  int fan_in = 0;
};

std::vector<ParamRef> param_refs(Network& n);

Network parse_network(const std::string& json_text);
Network load_network(const std::string& path);
std::string serialize_network(const Network& n);
void save_network(const Network& n, const std::string& path);

// Round-to-nearest-even IEEE-754 binary16 value of v, expanded back to
// double. Magnitudes beyond the largest finite binary16 clamp to +/-65504.
double quantize_binary16(double v);

// Replaces every weight and bias by its binary16 rounding. Initial states
// are left untouched. clamped_count (optional) receives the number of
// entries that exceeded the binary16 range.
Network quantize_weights(const Network& n, int* clamped_count = nullptr);

// Deterministic benchmark fixture: weights uniform in
// [-1/sqrt(fan_in), +1/sqrt(fan_in)], drawn from a fixed stream; identical
// (spec, seed) pairs produce bit-identical networks.
Network generate_network(const ArchSpec& spec, std::uint64_t seed);

// Enclosure of one weight-difference matrix W' - W.
struct DeltaMat {
  Eigen::MatrixXd nominal;  // round-to-nearest W' - W
  Eigen::MatrixXd lo, hi;   // directed enclosure of the exact difference
  bool is_zero() const;

  Interval at(Eigen::Index r, Eigen::Index c) const {
    return Interval(lo(r, c), hi(r, c));
  }
};

struct DiffNetwork {
  Network a, b;
  std::map<std::string, DeltaMat> deltas;  // keyed by canonical param name

  const DeltaMat& delta(const std::string& name) const;
};

// Pairs two structurally similar networks; throws std::invalid_argument on
// structural mismatch. Bias deltas are stored as n x 1 matrices.
DiffNetwork diff_weights(const Network& a, const Network& b);

// Boxed input region over the flattened input variables; for sequences the
// layout is time-major: variable (t-1)*input + j feeds step t.
struct InputRegion {
  Box box;
};

}  // namespace diffnn

#endif  // DIFFNN_NETWORK_HPP
