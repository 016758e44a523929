#include "discogan/checkpoint.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "discogan/errors.hpp"

namespace discogan {
namespace {

void write_matrix(std::ostream& out, const char* tag, const Matrix& m) {
  out << tag << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ' ';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

void write_params(std::ostream& out, const MlpParams& p) {
  for (std::size_t i = 0; i < p.weights.size(); ++i) {
    write_matrix(out, "weights", p.weights[i]);
    write_matrix(out, "biases", p.biases[i]);
  }
}

void write_network(std::ostream& out, const char* name, const Network& net) {
  out << "network " << name << '\n';
  out << "dims";
  for (auto d : net.spec.layer_dims) out << ' ' << d;
  out << '\n' << "activations";
  for (const auto& a : net.spec.activations) out << ' ' << to_string(a);
  out << '\n';
  write_params(out, net.params);
}

void write_adam(std::ostream& out, const char* name, const AdamState& s) {
  out << "adam " << name << '\n';
  out << "t " << s.t << '\n';
  out << "hyper " << format_double(s.hyper.lr) << ' ' << format_double(s.hyper.beta1) << ' '
      << format_double(s.hyper.beta2) << ' ' << format_double(s.hyper.epsilon) << ' '
      << format_double(s.hyper.weight_decay) << '\n';
  out << "m\n";
  write_params(out, s.m);
  out << "v\n";
  write_params(out, s.v);
}

// Whitespace-separated tokens with a line counter for error messages.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string line() {
    std::string s;
    if (!std::getline(in_, s)) fail("unexpected end of file");
    ++line_no_;
    return s;
  }

  std::string token() {
    while (pos_ >= tokens_.size()) {
      tokens_.clear();
      pos_ = 0;
      std::istringstream ls(line());
      std::string t;
      while (ls >> t) tokens_.push_back(t);
    }
    return tokens_[pos_++];
  }

  void expect(const std::string& word) {
    const std::string t = token();
    if (t != word) fail("expected '" + word + "', found '" + t + "'");
  }

  std::uint64_t u64() {
    const std::string t = token();
    std::uint64_t v = 0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || end != t.data() + t.size()) fail("bad integer '" + t + "'");
    return v;
  }

  double real() {
    const std::string t = token();
    double v = 0.0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || end != t.data() + t.size()) fail("bad number '" + t + "'");
    return v;
  }

  // Remaining tokens of the current line.
  std::vector<std::string> rest_of_line() {
    std::vector<std::string> out(tokens_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                 tokens_.end());
    pos_ = tokens_.size();
    return out;
  }

  void end_of_line() {
    if (pos_ != tokens_.size()) fail("trailing tokens");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw PersistenceError("checkpoint line " + std::to_string(line_no_) + ": " + msg);
  }

 private:
  std::istream& in_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

constexpr std::uint64_t kMaxEntries = 1u << 24;

Matrix read_matrix(Reader& r, const char* tag) {
  r.expect(tag);
  const std::uint64_t rows = r.u64();
  const std::uint64_t cols = r.u64();
  if (cols != 0 && rows > kMaxEntries / cols) r.fail("matrix too large");
  Matrix m(rows, cols);
  for (auto& v : m.values()) v = r.real();
  return m;
}

MlpParams read_params(Reader& r, std::size_t layers) {
  MlpParams p;
  for (std::size_t i = 0; i < layers; ++i) {
    p.weights.push_back(read_matrix(r, "weights"));
    p.biases.push_back(read_matrix(r, "biases"));
  }
  return p;
}

Network read_network(Reader& r, const std::string& name) {
  r.expect("network");
  r.expect(name);
  r.expect("dims");
  Network net;
  for (const auto& t : r.rest_of_line()) {
    std::size_t v = 0;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || end != t.data() + t.size()) r.fail("bad dimension '" + t + "'");
    net.spec.layer_dims.push_back(v);
  }
  r.expect("activations");
  try {
    for (const auto& t : r.rest_of_line()) net.spec.activations.push_back(parse_activation(t));
    net.spec.validate();
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
  net.params = read_params(r, net.spec.num_layers());
  try {
    net.params.check_against(net.spec);
  } catch (const ShapeError& e) {
    r.fail(e.what());
  }
  return net;
}

AdamState read_adam(Reader& r, const std::string& name, const Network& net) {
  r.expect("adam");
  r.expect(name);
  AdamState s;
  r.expect("t");
  s.t = r.u64();
  r.expect("hyper");
  s.hyper.lr = r.real();
  s.hyper.beta1 = r.real();
  s.hyper.beta2 = r.real();
  s.hyper.epsilon = r.real();
  s.hyper.weight_decay = r.real();
  r.expect("m");
  s.m = read_params(r, net.spec.num_layers());
  r.expect("v");
  s.v = read_params(r, net.spec.num_layers());
  if (!s.m.same_shape(net.params) || !s.v.same_shape(net.params)) {
    r.fail("optimizer moments do not match network " + name);
  }
  return s;
}

}  // namespace

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
  const TrainerState& st = ckpt.state;
  ExperimentConfig experiment = ckpt.experiment;
  experiment.train = st.config;
  const std::string config_text = render_config(experiment);
  std::size_t config_lines = 0;
  for (char c : config_text) config_lines += c == '\n';

  out << kCheckpointMagic << " v" << kCheckpointVersion << '\n';
  out << "config " << config_lines << '\n' << config_text;
  out << "variant " << to_string(st.models.kind) << '\n';
  out << "iteration " << st.iteration << '\n';
  out << "rng";
  for (auto w : st.rng.state()) out << ' ' << w;
  out << '\n';
  const ModelSet& m = st.models;
  const OptimizerStates& o = st.optimizers;
  write_network(out, "g_ab", m.g_ab);
  if (m.g_ba) write_network(out, "g_ba", *m.g_ba);
  if (m.d_a) write_network(out, "d_a", *m.d_a);
  write_network(out, "d_b", m.d_b);
  write_adam(out, "g_ab", o.g_ab);
  if (o.g_ba) write_adam(out, "g_ba", *o.g_ba);
  if (o.d_a) write_adam(out, "d_a", *o.d_a);
  write_adam(out, "d_b", o.d_b);
  out << "end\n";
}

Checkpoint read_checkpoint(std::istream& in) {
  Reader r(in);
  r.expect(kCheckpointMagic);
  const std::string version = r.token();
  if (version != "v" + std::to_string(kCheckpointVersion)) {
    r.fail("unsupported version '" + version + "'");
  }
  r.end_of_line();

  Checkpoint ckpt;
  r.expect("config");
  const std::uint64_t config_lines = r.u64();
  r.end_of_line();
  std::string config_text;
  for (std::uint64_t i = 0; i < config_lines; ++i) config_text += r.line() + '\n';
  try {
    ckpt.experiment = parse_config(config_text);
  } catch (const ConfigError& e) {
    r.fail(std::string("embedded config: ") + e.what());
  }
  TrainerState& st = ckpt.state;
  st.config = ckpt.experiment.train;

  r.expect("variant");
  const std::string variant = r.token();
  try {
    st.models.kind = parse_variant(variant);
  } catch (const std::invalid_argument& e) {
    r.fail(e.what());
  }
  if (st.models.kind != st.config.variant) r.fail("variant disagrees with embedded config");
  r.expect("iteration");
  st.iteration = r.u64();
  r.expect("rng");
  Rng::State words{};
  for (auto& w : words) w = r.u64();
  st.rng = Rng::from_state(words);

  const VariantKind kind = st.models.kind;
  const bool has_g_ba = kind != VariantKind::kStandardGan;
  const bool has_d_a = kind == VariantKind::kDiscoGan;
  ModelSet& m = st.models;
  m.g_ab = read_network(r, "g_ab");
  if (has_g_ba) m.g_ba = read_network(r, "g_ba");
  if (has_d_a) m.d_a = read_network(r, "d_a");
  m.d_b = read_network(r, "d_b");
  OptimizerStates& o = st.optimizers;
  o.g_ab = read_adam(r, "g_ab", m.g_ab);
  if (has_g_ba) o.g_ba = read_adam(r, "g_ba", *m.g_ba);
  if (has_d_a) o.d_a = read_adam(r, "d_a", *m.d_a);
  o.d_b = read_adam(r, "d_b", m.d_b);
  r.expect("end");
  r.end_of_line();
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PersistenceError("cannot open '" + path + "' for writing");
  write_checkpoint(out, ckpt);
  out.flush();
  if (!out) throw PersistenceError("failed writing '" + path + "'");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PersistenceError("cannot open '" + path + "'");
  return read_checkpoint(in);
}

}  // namespace discogan
