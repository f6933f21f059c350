#include "diffnn/engine.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <sstream>
#include <stdexcept>

#include "diffnn/log.hpp"
#include "diffnn/rng.hpp"
#include "diffnn/symbolic.hpp"

namespace diffnn {

namespace {

using Clock = std::chrono::steady_clock;

struct DeadlineExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Deadline {
  Clock::time_point end;
  void check() const {
    if (Clock::now() >= end) throw DeadlineExceeded("deadline exceeded");
  }
};

std::vector<Interval> zero_vector(std::size_t n) {
  return std::vector<Interval>(n, Interval(0.0));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// out += D (x) v, with D an interval enclosure matrix.
void add_delta_matvec(std::vector<Interval>& out, const DeltaMat& D,
                      const std::vector<Interval>& v) {
  require(static_cast<std::size_t>(D.lo.rows()) == out.size() &&
              static_cast<std::size_t>(D.lo.cols()) == v.size(),
          "delta matrix dimensions do not match");
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      out[i] = iv_add(out[i], iv_mul(D.at(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(j)),
                                     v[j]));
}

// out += W * v, with W a concrete scalar matrix.
void add_scalar_matvec(std::vector<Interval>& out, const Eigen::MatrixXd& W,
                       const std::vector<Interval>& v) {
  require(static_cast<std::size_t>(W.rows()) == out.size() &&
              static_cast<std::size_t>(W.cols()) == v.size(),
          "matrix dimensions do not match");
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      out[i] = iv_add(out[i], iv_scale(v[j], W(static_cast<Eigen::Index>(i),
                                               static_cast<Eigen::Index>(j))));
}

// out += bias delta (stored as an n x 1 enclosure).
void add_delta_bias(std::vector<Interval>& out, const DeltaMat& D) {
  require(static_cast<std::size_t>(D.lo.rows()) == out.size() && D.lo.cols() == 1,
          "bias delta dimensions do not match");
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = iv_add(out[i], D.at(static_cast<Eigen::Index>(i), 0));
}

std::vector<Interval> slice_inputs(const InputRegion& region, int m, int t) {
  std::vector<Interval> x(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    x[static_cast<std::size_t>(j)] =
        region.box[static_cast<std::size_t>((t - 1) * m + j)];
  return x;
}

double max_width(const std::vector<Interval>& v) {
  double w = 0.0;
  for (const auto& iv : v) w = std::fmax(w, iv.width());
  return w;
}

// delta pre-activation for one LSTM gate:
// WD_vx x(t) + W'_vh dh(t-1) + WD_vh h(t-1) + bD_v.
std::vector<Interval> affine_diff_gate(const DiffNetwork& dn, char gate,
                                       const Eigen::MatrixXd& Wvh_second,
                                       const std::vector<Interval>& x_t,
                                       const std::vector<Interval>& h_prev,
                                       const std::vector<Interval>& dh_prev) {
  std::string g(1, gate);
  std::vector<Interval> out = zero_vector(h_prev.size());
  add_delta_matvec(out, dn.delta("W_" + g + "x"), x_t);
  add_scalar_matvec(out, Wvh_second, dh_prev);
  add_delta_matvec(out, dn.delta("W_" + g + "h"), h_prev);
  add_delta_bias(out, dn.delta("b_" + g));
  return out;
}

bool is_zero(const Interval& iv) { return iv.lo == 0.0 && iv.hi == 0.0; }

// One boxed surface problem: optimizer candidates, pre-widened, then
// validated. Boxes with both difference dimensions pinned at [0,0]
// short-circuit: the surface vanishes identically there.
Interval solve_surface(SurfaceKind kind, const Box& box, const OptParams& opt,
                       const ValidatorParams& val, std::uint64_t seed) {
  if (is_zero(box[1]) && is_zero(box[3])) return Interval(0.0);
  OptParams p = opt;
  p.seed = seed;
  ExtremaCandidates cand = de_extremize(kind, box, p);
  Interval widened = iv_widen(Interval(cand.min_value, cand.max_value), 1e-9);
  Interval validated = validate_and_adjust(kind, box, widened, val);
  // Unsat verdicts hold modulo the solver slack, so the validated interval
  // may still undershoot the true range by val.delta per side; widening by
  // delta turns it into an unconditional enclosure.
  return iv_widen(validated, val.delta);
}

LstmDiffResult lstm_cell_diff_impl(const LayerState& state,
                                   const std::vector<Interval>& di_in,
                                   const std::vector<Interval>& df_in,
                                   const std::vector<Interval>& dg_in,
                                   const std::vector<Interval>& do_in,
                                   const std::vector<Interval>& dc_prev,
                                   const OptParams& opt,
                                   const ValidatorParams& val,
                                   std::uint64_t step_seed, int jobs,
                                   const Deadline* deadline) {
  const std::size_t n = state.f_in.size();
  require(state.i_in.size() == n && state.g_in.size() == n &&
              state.o_in.size() == n && state.c.size() == n &&
              state.c_prev.size() == n && di_in.size() == n &&
              df_in.size() == n && dg_in.size() == n && do_in.size() == n &&
              dc_prev.size() == n,
          "lstm_cell_diff: vector lengths disagree");

  LstmDiffResult res;
  res.dc.resize(n);
  res.dh.resize(n);

  auto neuron = [&](std::size_t i) {
    if (deadline) deadline->check();
    Box b1({state.f_in[i], df_in[i], state.c_prev[i], dc_prev[i]});
    Interval dc1 = solve_surface(SurfaceKind::F1, b1, opt, val,
                                 mix_seed(step_seed, i * 4 + 0));
    Box b2({state.i_in[i], di_in[i], state.g_in[i], dg_in[i]});
    Interval dc2 = solve_surface(SurfaceKind::F2, b2, opt, val,
                                 mix_seed(step_seed, i * 4 + 1));
    res.dc[i] = iv_add(dc1, dc2);
    if (deadline) deadline->check();
    Box b3({state.o_in[i], do_in[i], state.c[i], res.dc[i]});
    res.dh[i] = solve_surface(SurfaceKind::H2, b3, opt, val,
                              mix_seed(step_seed, i * 4 + 2));
    if (log_enabled(LogLevel::Debug)) {
      std::ostringstream os;
      os << "neuron " << i << " dc=" << to_string(res.dc[i])
         << " dh=" << to_string(res.dh[i]);
      log_line(LogLevel::Debug, os.str());
    }
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) neuron(i);
  } else {
    // Per-neuron problems are independent; seeds are per-neuron, so the
    // result does not depend on scheduling.
    std::size_t next = 0;
    while (next < n) {
      std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(jobs),
                                                n - next);
      std::vector<std::future<void>> futs;
      futs.reserve(batch);
      for (std::size_t k = 0; k < batch; ++k)
        futs.push_back(std::async(std::launch::async, neuron, next + k));
      for (auto& f : futs) f.get();
      next += batch;
    }
  }
  return res;
}

std::vector<SymBounds> step_inputs_symbolic(const std::vector<Interval>& x_t,
                                            const std::vector<Interval>& h_prev) {
  std::size_t m = x_t.size();
  std::vector<SymBounds> prev;
  prev.reserve(m + h_prev.size());
  for (std::size_t j = 0; j < m; ++j)
    prev.push_back(SymBounds::variable(j, m));
  for (const Interval& h : h_prev)
    prev.push_back(SymBounds::constant(h, m));
  return prev;
}

std::vector<Interval> verify_ffnn(const DiffNetwork& dn,
                                  const InputRegion& region,
                                  const Deadline& dl,
                                  std::vector<double>& widths) {
  const Network& A = dn.a;
  const Network& B = dn.b;
  const std::size_t L = A.Ws.size();
  const std::size_t nvars = static_cast<std::size_t>(A.layers.front());

  std::vector<SymBounds> prev;
  prev.reserve(nvars);
  for (std::size_t j = 0; j < nvars; ++j)
    prev.push_back(SymBounds::variable(j, nvars));
  std::vector<Interval> h(region.box.dims);
  std::vector<Interval> dh = zero_vector(nvars);

  for (std::size_t l = 0; l < L; ++l) {
    dl.check();
    auto syms = sym_affine(prev, A.Ws[l], A.bs[l]);
    std::vector<Interval> a(syms.size());
    for (std::size_t i = 0; i < syms.size(); ++i)
      a[i] = concretize(syms[i], region.box);

    std::vector<Interval> da = zero_vector(a.size());
    std::string idx = std::to_string(l);
    add_delta_matvec(da, dn.delta("W" + idx), h);
    add_scalar_matvec(da, B.Ws[l], dh);
    add_delta_bias(da, dn.delta("b" + idx));

    if (l + 1 == L) {
      widths.push_back(max_width(da));
      return da;
    }
    h.resize(a.size());
    dh.resize(a.size());
    prev.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
      h[i] = act_value_bounds(A.act, a[i]);
      dh[i] = act_diff_bounds(A.act, a[i], da[i]);
      prev.push_back(SymBounds::constant(h[i], nvars));
    }
    widths.push_back(max_width(dh));
  }
  return {};  // unreachable: L >= 1
}

std::vector<Interval> verify_rnn(const DiffNetwork& dn,
                                 const InputRegion& region, const Deadline& dl,
                                 std::vector<double>& widths) {
  const Network& A = dn.a;
  LayerState state = init_state(A);
  std::vector<Interval> dh = zero_vector(static_cast<std::size_t>(A.hidden));

  for (int t = 1; t <= A.steps; ++t) {
    dl.check();
    std::vector<Interval> x_t = slice_inputs(region, A.input, t);
    std::vector<Interval> h_prev = state.h;
    value_bounds_step(A, x_t, state);
    std::vector<Interval> da = affine_diff_rnn(dn, x_t, h_prev, dh);
    dh = nonlinear_diff_rnn(A.act, state.a, da);
    widths.push_back(max_width(dh));
    if (log_enabled(LogLevel::Info))
      log_line(LogLevel::Info, "step " + std::to_string(t) +
                                   " max dh width " + std::to_string(widths.back()));
  }
  dl.check();
  return output_diff(dn, state.h, dh);
}

std::vector<Interval> verify_lstm(const DiffNetwork& dn,
                                  const InputRegion& region,
                                  const VerifyOptions& opts, const Deadline& dl,
                                  std::vector<double>& widths) {
  const Network& A = dn.a;
  const Network& B = dn.b;
  LayerState state = init_state(A);
  std::vector<Interval> dh = zero_vector(static_cast<std::size_t>(A.hidden));
  std::vector<Interval> dc = zero_vector(static_cast<std::size_t>(A.hidden));

  for (int t = 1; t <= A.steps; ++t) {
    dl.check();
    std::vector<Interval> x_t = slice_inputs(region, A.input, t);
    std::vector<Interval> h_prev = state.h;
    value_bounds_step(A, x_t, state);

    std::vector<Interval> di = affine_diff_gate(dn, 'i', B.W_ih, x_t, h_prev, dh);
    std::vector<Interval> df = affine_diff_gate(dn, 'f', B.W_fh, x_t, h_prev, dh);
    std::vector<Interval> dg = affine_diff_gate(dn, 'g', B.W_gh, x_t, h_prev, dh);
    std::vector<Interval> do_ = affine_diff_gate(dn, 'o', B.W_oh, x_t, h_prev, dh);

    LstmDiffResult res = lstm_cell_diff_impl(
        state, di, df, dg, do_, dc, opts.opt, opts.val,
        mix_seed(opts.opt.seed, static_cast<std::uint64_t>(t)), opts.jobs, &dl);
    dc = std::move(res.dc);
    dh = std::move(res.dh);
    widths.push_back(std::fmax(max_width(dh), max_width(dc)));
    if (log_enabled(LogLevel::Info))
      log_line(LogLevel::Info, "step " + std::to_string(t) +
                                   " max diff width " + std::to_string(widths.back()));
  }
  dl.check();
  return output_diff(dn, state.h, dh);
}

}  // namespace

LayerState init_state(const Network& net) {
  LayerState s;
  const std::size_t n = static_cast<std::size_t>(net.hidden);
  if (net.kind == ArchKind::FeedForward) return s;
  s.h.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    s.h[i] = Interval(net.h0(static_cast<Eigen::Index>(i)));
  s.dh = zero_vector(n);
  s.a = zero_vector(n);
  s.da = zero_vector(n);
  if (net.kind == ArchKind::LSTM) {
    s.c.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      s.c[i] = Interval(net.c0(static_cast<Eigen::Index>(i)));
    s.c_prev = s.c;
    s.dc = zero_vector(n);
    for (auto* v : {&s.i_in, &s.f_in, &s.g_in, &s.o_in, &s.di_in, &s.df_in,
                    &s.dg_in, &s.do_in})
      *v = zero_vector(n);
  }
  return s;
}

std::vector<Interval> affine_diff_rnn(const DiffNetwork& dn,
                                      const std::vector<Interval>& x_t,
                                      const std::vector<Interval>& h_prev,
                                      const std::vector<Interval>& dh_prev) {
  require(dn.a.kind == ArchKind::VanillaRNN, "affine_diff_rnn: not a vanilla RNN");
  require(x_t.size() == static_cast<std::size_t>(dn.a.input) &&
              h_prev.size() == static_cast<std::size_t>(dn.a.hidden) &&
              dh_prev.size() == h_prev.size(),
          "affine_diff_rnn: vector lengths disagree");
  std::vector<Interval> out = zero_vector(h_prev.size());
  add_delta_matvec(out, dn.delta("W_hx"), x_t);
  add_scalar_matvec(out, dn.b.W_hh, dh_prev);
  add_delta_matvec(out, dn.delta("W_hh"), h_prev);
  add_delta_bias(out, dn.delta("b_h"));
  return out;
}

void value_bounds_step(const Network& net, const std::vector<Interval>& x_t,
                       LayerState& state) {
  require(net.kind != ArchKind::FeedForward,
          "value_bounds_step: recurrent networks only");
  const std::size_t m = static_cast<std::size_t>(net.input);
  const std::size_t n = static_cast<std::size_t>(net.hidden);
  require(x_t.size() == m, "value_bounds_step: input slice length mismatch");
  require(state.h.size() == n, "value_bounds_step: state size mismatch");

  Box xbox{std::vector<Interval>(x_t)};
  std::vector<SymBounds> prev = step_inputs_symbolic(x_t, state.h);

  auto affine = [&](const Eigen::MatrixXd& Wx, const Eigen::MatrixXd& Wh,
                    const Eigen::VectorXd& b, std::vector<Interval>& out) {
    Eigen::MatrixXd W(Wx.rows(), Wx.cols() + Wh.cols());
    W << Wx, Wh;
    auto syms = sym_affine(prev, W, b);
    out.resize(syms.size());
    for (std::size_t i = 0; i < syms.size(); ++i)
      out[i] = concretize(syms[i], xbox);
  };

  if (net.kind == ArchKind::VanillaRNN) {
    affine(net.W_hx, net.W_hh, net.b_h, state.a);
    state.h.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      state.h[i] = act_value_bounds(net.act, state.a[i]);
    return;
  }

  affine(net.W_ix, net.W_ih, net.b_i, state.i_in);
  affine(net.W_fx, net.W_fh, net.b_f, state.f_in);
  affine(net.W_gx, net.W_gh, net.b_g, state.g_in);
  affine(net.W_ox, net.W_oh, net.b_o, state.o_in);
  state.c_prev = state.c;
  for (std::size_t i = 0; i < n; ++i) {
    Interval fs = act_value_bounds(Activation::Sigmoid, state.f_in[i]);
    Interval is = act_value_bounds(Activation::Sigmoid, state.i_in[i]);
    Interval gt = act_value_bounds(Activation::Tanh, state.g_in[i]);
    state.c[i] = iv_add(iv_mul(fs, state.c_prev[i]), iv_mul(is, gt));
    Interval os = act_value_bounds(Activation::Sigmoid, state.o_in[i]);
    state.h[i] = iv_mul(os, act_value_bounds(Activation::Tanh, state.c[i]));
  }
}

std::vector<Interval> nonlinear_diff_rnn(Activation act,
                                         const std::vector<Interval>& a_bounds,
                                         const std::vector<Interval>& da) {
  require(a_bounds.size() == da.size(),
          "nonlinear_diff_rnn: vector lengths disagree");
  std::vector<Interval> out(a_bounds.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = act_diff_bounds(act, a_bounds[i], da[i]);
  return out;
}

LstmDiffResult lstm_cell_diff(const LayerState& state,
                              const std::vector<Interval>& di_in,
                              const std::vector<Interval>& df_in,
                              const std::vector<Interval>& dg_in,
                              const std::vector<Interval>& do_in,
                              const std::vector<Interval>& dc_prev,
                              const OptParams& opt, const ValidatorParams& val,
                              std::uint64_t step_seed, int jobs) {
  return lstm_cell_diff_impl(state, di_in, df_in, dg_in, do_in, dc_prev, opt,
                             val, step_seed, jobs, nullptr);
}

std::vector<Interval> output_diff(const DiffNetwork& dn,
                                  const std::vector<Interval>& h_T,
                                  const std::vector<Interval>& dh_T) {
  require(dn.a.kind != ArchKind::FeedForward,
          "output_diff: recurrent networks only");
  std::vector<Interval> out = zero_vector(static_cast<std::size_t>(dn.a.output));
  add_scalar_matvec(out, dn.b.W_hy, dh_T);
  add_delta_matvec(out, dn.delta("W_hy"), h_T);
  add_delta_bias(out, dn.delta("b_y"));
  return out;
}

std::vector<Interval> output_value_bounds(const Network& net,
                                          const InputRegion& region) {
  require(region.box.size() == static_cast<std::size_t>(net.total_inputs()),
          "region dimension does not match the network input count");
  if (net.kind == ArchKind::FeedForward) {
    const std::size_t nvars = static_cast<std::size_t>(net.layers.front());
    std::vector<SymBounds> prev;
    for (std::size_t j = 0; j < nvars; ++j)
      prev.push_back(SymBounds::variable(j, nvars));
    std::vector<Interval> a;
    for (std::size_t l = 0; l < net.Ws.size(); ++l) {
      auto syms = sym_affine(prev, net.Ws[l], net.bs[l]);
      a.assign(syms.size(), Interval(0.0));
      for (std::size_t i = 0; i < syms.size(); ++i)
        a[i] = concretize(syms[i], region.box);
      if (l + 1 == net.Ws.size()) break;
      prev.clear();
      for (const Interval& ai : a)
        prev.push_back(SymBounds::constant(act_value_bounds(net.act, ai), nvars));
    }
    return a;
  }

  LayerState state = init_state(net);
  for (int t = 1; t <= net.steps; ++t)
    value_bounds_step(net, slice_inputs(region, net.input, t), state);
  std::vector<Interval> y = zero_vector(static_cast<std::size_t>(net.output));
  add_scalar_matvec(y, net.W_hy, state.h);
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = iv_add(y[i], Interval(net.b_y(static_cast<Eigen::Index>(i))));
  return y;
}

VerdictReport verify(const DiffNetwork& dn, const InputRegion& region,
                     double epsilon, const VerifyOptions& opts) {
  auto t0 = Clock::now();
  VerdictReport rep;
  rep.epsilon = epsilon;

  require(region.box.size() == static_cast<std::size_t>(dn.a.total_inputs()),
          "region dimension does not match the network input count");

  Deadline dl{t0 + std::chrono::duration_cast<Clock::duration>(
                       std::chrono::duration<double>(opts.deadline_seconds))};
  try {
    dl.check();
    switch (dn.a.kind) {
      case ArchKind::FeedForward:
        rep.delta_y = verify_ffnn(dn, region, dl, rep.max_diff_width);
        break;
      case ArchKind::VanillaRNN:
        rep.delta_y = verify_rnn(dn, region, dl, rep.max_diff_width);
        break;
      case ArchKind::LSTM:
        rep.delta_y = verify_lstm(dn, region, opts, dl, rep.max_diff_width);
        break;
    }
    bool proved = !rep.delta_y.empty();
    for (const Interval& dy : rep.delta_y)
      proved = proved && dy.max_abs() < epsilon;
    rep.verdict = proved ? VerdictReport::Outcome::Proved
                         : VerdictReport::Outcome::Unknown;
    if (!proved) rep.note = "output difference bound not below epsilon";
  } catch (const DeadlineExceeded&) {
    rep.verdict = VerdictReport::Outcome::Unknown;
    rep.note = "deadline exceeded";
  } catch (const ValidationCapExceeded& e) {
    rep.verdict = VerdictReport::Outcome::Unknown;
    rep.note = e.what();
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

}  // namespace diffnn
