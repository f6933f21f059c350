#include "diffnn/network.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "diffnn/rng.hpp"

namespace diffnn {

namespace {

using nlohmann::json;

int parse_positive_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid " + what + ": " + s);
  }
  if (pos != s.size() || v <= 0)
    throw std::invalid_argument("invalid " + what + ": " + s);
  return v;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json row = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(v(i));
  json rows = json::array();
  rows.push_back(std::move(row));
  return rows;  // vectors serialize as a single-row 2-D array
}

Eigen::MatrixXd json_to_matrix(const json& j, Eigen::Index rows,
                               Eigen::Index cols, const std::string& name) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw std::runtime_error("weight " + name + ": expected " +
                             std::to_string(rows) + " rows");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw std::runtime_error("weight " + name + ": expected " +
                               std::to_string(cols) + " columns in row " +
                               std::to_string(r));
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_number())
        throw std::runtime_error("weight " + name + ": non-numeric entry");
      m(r, c) = cell.get<double>();
    }
  }
  return m;
}

Eigen::VectorXd json_to_vector(const json& j, Eigen::Index n,
                               const std::string& name) {
  Eigen::MatrixXd m = json_to_matrix(j, 1, n, name);
  return m.row(0).transpose();
}

void size_network(Network& n) {
  switch (n.kind) {
    case ArchKind::FeedForward: {
      std::size_t L = n.layers.size() - 1;
      n.Ws.resize(L);
      n.bs.resize(L);
      for (std::size_t l = 0; l < L; ++l) {
        n.Ws[l].setZero(n.layers[l + 1], n.layers[l]);
        n.bs[l].setZero(n.layers[l + 1]);
      }
      n.input = n.layers.front();
      n.output = n.layers.back();
      n.hidden = 0;
      n.steps = 1;
      break;
    }
    case ArchKind::VanillaRNN:
      n.W_hx.setZero(n.hidden, n.input);
      n.W_hh.setZero(n.hidden, n.hidden);
      n.b_h.setZero(n.hidden);
      n.W_hy.setZero(n.output, n.hidden);
      n.b_y.setZero(n.output);
      n.h0.setZero(n.hidden);
      break;
    case ArchKind::LSTM:
      for (auto* m : {&n.W_ix, &n.W_fx, &n.W_gx, &n.W_ox})
        m->setZero(n.hidden, n.input);
      for (auto* m : {&n.W_ih, &n.W_fh, &n.W_gh, &n.W_oh})
        m->setZero(n.hidden, n.hidden);
      for (auto* v : {&n.b_i, &n.b_f, &n.b_g, &n.b_o}) v->setZero(n.hidden);
      n.W_hy.setZero(n.output, n.hidden);
      n.b_y.setZero(n.output);
      n.h0.setZero(n.hidden);
      n.c0.setZero(n.hidden);
      break;
  }
}

}  // namespace

const char* to_string(ArchKind kind) {
  switch (kind) {
    case ArchKind::FeedForward: return "ffnn";
    case ArchKind::VanillaRNN: return "rnn";
    case ArchKind::LSTM: return "lstm";
  }
  return "?";
}

ArchKind arch_kind_from_string(const std::string& name) {
  if (name == "ffnn") return ArchKind::FeedForward;
  if (name == "rnn") return ArchKind::VanillaRNN;
  if (name == "lstm") return ArchKind::LSTM;
  throw std::invalid_argument("unknown arch: " + name);
}

ArchSpec ArchSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("arch spec must look like family:AxB, got: " + text);
  ArchSpec spec;
  spec.kind = arch_kind_from_string(text.substr(0, colon));
  std::vector<int> parts;
  std::string rest = text.substr(colon + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    auto x = rest.find('x', start);
    std::string tok = rest.substr(start, x == std::string::npos ? x : x - start);
    parts.push_back(parse_positive_int(tok, "arch dimension"));
    if (x == std::string::npos) break;
    start = x + 1;
  }
  if (parts.size() < 2 || parts.size() > 4)
    throw std::invalid_argument("arch spec needs 2 to 4 dimensions: " + text);
  spec.steps = parts[0];
  spec.hidden = parts[1];
  spec.input = parts.size() >= 3 ? parts[2] : parts[1];
  spec.output = parts.size() >= 4 ? parts[3] : 2;
  return spec;
}

int Network::total_inputs() const {
  return kind == ArchKind::FeedForward ? input : input * steps;
}

bool Network::same_structure(const Network& o, std::string* why) const {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  if (kind != o.kind) return fail("architecture kinds differ");
  if (act != o.act) return fail("activation kinds differ");
  if (kind == ArchKind::FeedForward) {
    if (layers != o.layers) return fail("layer widths differ");
  } else {
    if (input != o.input || hidden != o.hidden || output != o.output ||
        steps != o.steps)
      return fail("recurrent dimensions differ");
  }
  if (h0.size() != o.h0.size() || h0 != o.h0)
    return fail("initial hidden states differ");
  if (kind == ArchKind::LSTM && (c0.size() != o.c0.size() || c0 != o.c0))
    return fail("initial cell states differ");
  return true;
}

std::vector<ParamRef> param_refs(Network& n) {
  std::vector<ParamRef> refs;
  auto mat = [&](const char* name, Eigen::MatrixXd& m) {
    refs.push_back({name, &m, nullptr, static_cast<int>(m.cols())});
  };
  auto vec = [&](const char* name, Eigen::VectorXd& v, int fan_in) {
    refs.push_back({name, nullptr, &v, fan_in});
  };
  switch (n.kind) {
    case ArchKind::FeedForward:
      for (std::size_t l = 0; l < n.Ws.size(); ++l) {
        std::string w = "W" + std::to_string(l);
        std::string b = "b" + std::to_string(l);
        refs.push_back({w, &n.Ws[l], nullptr, static_cast<int>(n.Ws[l].cols())});
        refs.push_back({b, nullptr, &n.bs[l], static_cast<int>(n.Ws[l].cols())});
      }
      break;
    case ArchKind::VanillaRNN:
      mat("W_hx", n.W_hx);
      mat("W_hh", n.W_hh);
      vec("b_h", n.b_h, n.hidden);
      mat("W_hy", n.W_hy);
      vec("b_y", n.b_y, n.hidden);
      break;
    case ArchKind::LSTM:
      mat("W_ix", n.W_ix);
      mat("W_ih", n.W_ih);
      vec("b_i", n.b_i, n.hidden);
      mat("W_fx", n.W_fx);
      mat("W_fh", n.W_fh);
      vec("b_f", n.b_f, n.hidden);
      mat("W_gx", n.W_gx);
      mat("W_gh", n.W_gh);
      vec("b_g", n.b_g, n.hidden);
      mat("W_ox", n.W_ox);
      mat("W_oh", n.W_oh);
      vec("b_o", n.b_o, n.hidden);
      mat("W_hy", n.W_hy);
      vec("b_y", n.b_y, n.hidden);
      break;
  }
  return refs;
}

Network parse_network(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("network parse error: ") + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("network file: expected an object");
  if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
      j["format_version"].get<int>() != 1)
    throw std::runtime_error("network file: format_version must be 1");

  Network n;
  n.kind = arch_kind_from_string(j.at("arch").get<std::string>());
  n.act = activation_from_string(j.at("activation").get<std::string>());
  const json& dims = j.at("dims");
  if (n.kind == ArchKind::FeedForward) {
    n.layers = dims.at("layers").get<std::vector<int>>();
    if (n.layers.size() < 2)
      throw std::runtime_error("ffnn needs at least input and output widths");
    for (int w : n.layers)
      if (w <= 0) throw std::runtime_error("layer widths must be positive");
  } else {
    n.input = dims.at("input").get<int>();
    n.hidden = dims.at("hidden").get<int>();
    n.output = dims.at("output").get<int>();
    n.steps = dims.at("steps").get<int>();
    if (n.input <= 0 || n.hidden <= 0 || n.output <= 0 || n.steps <= 0)
      throw std::runtime_error("dims must be positive");
  }
  size_network(n);

  const json& weights = j.at("weights");
  for (const ParamRef& ref : param_refs(n)) {
    if (!weights.contains(ref.name))
      throw std::runtime_error("missing weight: " + ref.name);
    if (ref.mat)
      *ref.mat = json_to_matrix(weights.at(ref.name), ref.mat->rows(),
                                ref.mat->cols(), ref.name);
    else
      *ref.vec = json_to_vector(weights.at(ref.name), ref.vec->size(), ref.name);
  }
  if (j.contains("h0"))
    n.h0 = json_to_vector(j.at("h0"), n.h0.size(), "h0");
  if (n.kind == ArchKind::LSTM && j.contains("c0"))
    n.c0 = json_to_vector(j.at("c0"), n.c0.size(), "c0");
  return n;
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open network file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

std::string serialize_network(const Network& net) {
  Network n = net;  // param_refs needs mutable access
  json j;
  j["format_version"] = 1;
  j["arch"] = to_string(n.kind);
  j["activation"] = to_string(n.act);
  if (n.kind == ArchKind::FeedForward) {
    j["dims"] = {{"layers", n.layers}};
  } else {
    j["dims"] = {{"input", n.input},
                 {"hidden", n.hidden},
                 {"output", n.output},
                 {"steps", n.steps}};
  }
  json weights = json::object();
  for (const ParamRef& ref : param_refs(n))
    weights[ref.name] = ref.mat ? matrix_to_json(*ref.mat) : vector_to_json(*ref.vec);
  j["weights"] = std::move(weights);
  if (n.kind != ArchKind::FeedForward) j["h0"] = vector_to_json(n.h0);
  if (n.kind == ArchKind::LSTM) j["c0"] = vector_to_json(n.c0);
  return j.dump(1) + "\n";
}

void save_network(const Network& n, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write network file: " + path);
  out << serialize_network(n);
  if (!out) throw std::runtime_error("write failed: " + path);
}

double quantize_binary16(double v) {
  if (std::isnan(v)) throw std::invalid_argument("quantize_binary16: NaN weight");
  if (v == 0.0) return v;
  double a = std::fabs(v);
  if (a > 65504.0) return std::copysign(65504.0, v);
  // Snap to the binary16 grid: quantum 2^(e-10) for normals, 2^-24 below the
  // normal range. Scaling by a power of two is exact, so nearbyint performs
  // the single round-to-nearest-even step.
  int e = std::ilogb(a);
  int qexp = std::max(e - 10, -24);
  double scale = std::ldexp(1.0, -qexp);
  return std::nearbyint(v * scale) / scale;
}

Network quantize_weights(const Network& net, int* clamped_count) {
  Network out = net;
  int clamped = 0;
  for (const ParamRef& ref : param_refs(out)) {
    auto apply = [&](double x) {
      if (std::fabs(x) > 65504.0) ++clamped;
      return quantize_binary16(x);
    };
    if (ref.mat)
      *ref.mat = ref.mat->unaryExpr(apply);
    else
      *ref.vec = ref.vec->unaryExpr(apply);
  }
  if (clamped_count) *clamped_count = clamped;
  return out;
}

Network generate_network(const ArchSpec& spec, std::uint64_t seed) {
  Network n;
  n.kind = spec.kind;
  n.act = Activation::Sigmoid;
  if (spec.kind == ArchKind::FeedForward) {
    n.layers.assign(1, spec.input);
    n.layers.insert(n.layers.end(), static_cast<std::size_t>(spec.steps),
                    spec.hidden);
    n.layers.push_back(spec.output);
  } else {
    n.input = spec.input;
    n.hidden = spec.hidden;
    n.output = spec.output;
    n.steps = spec.steps;
  }
  size_network(n);

  Rng rng(seed);
  for (const ParamRef& ref : param_refs(n)) {
    double bound = 1.0 / std::sqrt(static_cast<double>(ref.fan_in));
    auto draw = [&]() { return (rng.u01() * 2.0 - 1.0) * bound; };
    if (ref.mat) {
      for (Eigen::Index r = 0; r < ref.mat->rows(); ++r)
        for (Eigen::Index c = 0; c < ref.mat->cols(); ++c) (*ref.mat)(r, c) = draw();
    } else {
      for (Eigen::Index i = 0; i < ref.vec->size(); ++i) (*ref.vec)(i) = draw();
    }
  }
  return n;
}

bool DeltaMat::is_zero() const {
  return (lo.array() == 0.0).all() && (hi.array() == 0.0).all();
}

const DeltaMat& DiffNetwork::delta(const std::string& name) const {
  auto it = deltas.find(name);
  if (it == deltas.end())
    throw std::out_of_range("no weight delta named " + name);
  return it->second;
}

DiffNetwork diff_weights(const Network& a, const Network& b) {
  std::string why;
  if (!a.same_structure(b, &why))
    throw std::invalid_argument("structurally dissimilar networks: " + why);

  DiffNetwork dn;
  dn.a = a;
  dn.b = b;
  auto refs_a = param_refs(dn.a);
  auto refs_b = param_refs(dn.b);
  for (std::size_t k = 0; k < refs_a.size(); ++k) {
    Eigen::MatrixXd ma = refs_a[k].mat ? *refs_a[k].mat
                                       : Eigen::MatrixXd(*refs_a[k].vec);
    Eigen::MatrixXd mb = refs_b[k].mat ? *refs_b[k].mat
                                       : Eigen::MatrixXd(*refs_b[k].vec);
    DeltaMat d;
    d.nominal = mb - ma;
    d.lo.resizeLike(ma);
    d.hi.resizeLike(ma);
    for (Eigen::Index r = 0; r < ma.rows(); ++r) {
      for (Eigen::Index c = 0; c < ma.cols(); ++c) {
        d.lo(r, c) = sub_down(mb(r, c), ma(r, c));
        d.hi(r, c) = sub_up(mb(r, c), ma(r, c));
      }
    }
    dn.deltas.emplace(refs_a[k].name, std::move(d));
  }
  return dn;
}

}  // namespace diffnn
