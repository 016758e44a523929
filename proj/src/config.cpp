#include "discogan/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "discogan/errors.hpp"

namespace discogan {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  return parts;
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw ConfigError("expected a number, got '" + s + "'");
  }
  return v;
}

long long to_integer(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw ConfigError("expected an integer, got '" + s + "'");
  }
  return v;
}

std::uint64_t to_count(const std::string& s, long long min_value) {
  const long long v = to_integer(s);
  if (v < min_value) {
    throw ConfigError("value " + s + " is out of range (minimum " + std::to_string(min_value) +
                      ")");
  }
  return static_cast<std::uint64_t>(v);
}

std::uint64_t to_seed(const std::string& s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw ConfigError("expected an unsigned 64-bit integer, got '" + s + "'");
  }
  return v;
}

Point2 to_point(const std::string& s) {
  const auto parts = split_commas(s);
  if (parts.size() != 2) throw ConfigError("expected 'x, y', got '" + s + "'");
  return {to_double(parts[0]), to_double(parts[1])};
}

std::vector<std::size_t> to_widths(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& part : split_commas(s)) out.push_back(to_count(part, 1));
  return out;
}

Activation to_activation(const std::string& s) {
  try {
    return parse_activation(s);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

std::string render_point(Point2 p) { return format_double(p.x) + ", " + format_double(p.y); }

std::string render_widths(const std::vector<std::size_t>& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(w[i]);
  }
  return out;
}

struct Field {
  std::function<void(ExperimentConfig&, const std::string&)> parse;
  std::function<std::string(const ExperimentConfig&)> render;
};

using FieldTable = std::vector<std::pair<std::string, Field>>;

void add_domain_fields(FieldTable& table, const std::string& prefix,
                       DomainConfig TrainConfig::*member) {
  auto dom = [member](ExperimentConfig& c) -> DomainConfig& { return c.train.*member; };
  auto cdom = [member](const ExperimentConfig& c) -> const DomainConfig& {
    return c.train.*member;
  };
  table.push_back({prefix + ".layout",
                   {[dom](ExperimentConfig& c, const std::string& v) {
                      if (v == "row") {
                        dom(c).layout = DomainLayout::kRow;
                      } else if (v == "arc") {
                        dom(c).layout = DomainLayout::kArc;
                      } else {
                        throw ConfigError("expected 'row' or 'arc', got '" + v + "'");
                      }
                    },
                    [cdom](const ExperimentConfig& c) -> std::string {
                      return cdom(c).layout == DomainLayout::kRow ? "row" : "arc";
                    }}});
  table.push_back({prefix + ".modes",
                   {[dom](ExperimentConfig& c, const std::string& v) {
                      dom(c).modes = to_count(v, 1);
                    },
                    [cdom](const ExperimentConfig& c) { return std::to_string(cdom(c).modes); }}});
  auto scalar = [&](const std::string& name, double DomainConfig::*field) {
    table.push_back({prefix + "." + name,
                     {[dom, field](ExperimentConfig& c, const std::string& v) {
                        dom(c).*field = to_double(v);
                      },
                      [cdom, field](const ExperimentConfig& c) {
                        return format_double(cdom(c).*field);
                      }}});
  };
  auto point = [&](const std::string& name, Point2 DomainConfig::*field) {
    table.push_back({prefix + "." + name,
                     {[dom, field](ExperimentConfig& c, const std::string& v) {
                        dom(c).*field = to_point(v);
                      },
                      [cdom, field](const ExperimentConfig& c) {
                        return render_point(cdom(c).*field);
                      }}});
  };
  scalar("stddev", &DomainConfig::stddev);
  point("start", &DomainConfig::start);
  point("step", &DomainConfig::step);
  point("center", &DomainConfig::center);
  scalar("radius", &DomainConfig::radius);
  scalar("angle_start", &DomainConfig::angle_start);
  scalar("angle_end", &DomainConfig::angle_end);
}

const FieldTable& fields() {
  static const FieldTable table = [] {
    FieldTable t;
    auto real = [&t](const std::string& key, auto getter) {
      t.push_back({key,
                   {[getter](ExperimentConfig& c, const std::string& v) {
                      getter(c) = to_double(v);
                    },
                    [getter](const ExperimentConfig& c) {
                      return format_double(getter(const_cast<ExperimentConfig&>(c)));
                    }}});
    };
    auto count = [&t](const std::string& key, long long min_value, auto getter) {
      t.push_back({key,
                   {[getter, min_value](ExperimentConfig& c, const std::string& v) {
                      using T = std::remove_reference_t<decltype(getter(c))>;
                      getter(c) = static_cast<T>(to_count(v, min_value));
                    },
                    [getter](const ExperimentConfig& c) {
                      return std::to_string(getter(const_cast<ExperimentConfig&>(c)));
                    }}});
    };

    t.push_back({"variant",
                 {[](ExperimentConfig& c, const std::string& v) {
                    try {
                      c.train.variant = parse_variant(v);
                    } catch (const ParameterError& e) {
                      throw ConfigError(e.what());
                    }
                  },
                  [](const ExperimentConfig& c) { return to_string(c.train.variant); }}});
    count("iterations", 1, [](ExperimentConfig& c) -> auto& { return c.train.iterations; });
    count("batch_size", 1, [](ExperimentConfig& c) -> auto& { return c.train.batch_size; });
    real("lr", [](ExperimentConfig& c) -> auto& { return c.train.adam.lr; });
    real("beta1", [](ExperimentConfig& c) -> auto& { return c.train.adam.beta1; });
    real("beta2", [](ExperimentConfig& c) -> auto& { return c.train.adam.beta2; });
    real("epsilon", [](ExperimentConfig& c) -> auto& { return c.train.adam.epsilon; });
    real("weight_decay", [](ExperimentConfig& c) -> auto& { return c.train.adam.weight_decay; });
    t.push_back({"seed",
                 {[](ExperimentConfig& c, const std::string& v) { c.train.seed = to_seed(v); },
                  [](const ExperimentConfig& c) { return std::to_string(c.train.seed); }}});
    count("log_every", 1, [](ExperimentConfig& c) -> auto& { return c.train.log_every; });
    t.push_back({"recon_distance",
                 {[](ExperimentConfig& c, const std::string& v) {
                    if (v != "mse") throw ConfigError("only 'mse' is supported, got '" + v + "'");
                    c.train.recon_distance = ReconDistance::kMse;
                  },
                  [](const ExperimentConfig&) { return std::string("mse"); }}});
    t.push_back({"gen_hidden",
                 {[](ExperimentConfig& c, const std::string& v) {
                    c.train.dims.gen_hidden = to_widths(v);
                  },
                  [](const ExperimentConfig& c) {
                    return render_widths(c.train.dims.gen_hidden);
                  }}});
    t.push_back({"disc_hidden",
                 {[](ExperimentConfig& c, const std::string& v) {
                    c.train.dims.disc_hidden = to_widths(v);
                  },
                  [](const ExperimentConfig& c) {
                    return render_widths(c.train.dims.disc_hidden);
                  }}});
    t.push_back({"hidden_activation",
                 {[](ExperimentConfig& c, const std::string& v) {
                    c.train.dims.hidden_activation = to_activation(v);
                  },
                  [](const ExperimentConfig& c) {
                    return to_string(c.train.dims.hidden_activation);
                  }}});
    t.push_back({"gen_output_activation",
                 {[](ExperimentConfig& c, const std::string& v) {
                    c.train.dims.gen_output_activation = to_activation(v);
                  },
                  [](const ExperimentConfig& c) {
                    return to_string(c.train.dims.gen_output_activation);
                  }}});
    add_domain_fields(t, "domain_a", &TrainConfig::domain_a);
    add_domain_fields(t, "domain_b", &TrainConfig::domain_b);
    real("eval.tau", [](ExperimentConfig& c) -> auto& { return c.eval.tau; });
    count("eval.samples_per_mode", 1,
          [](ExperimentConfig& c) -> auto& { return c.eval.samples_per_mode; });
    count("eval.roundtrip_samples", 1,
          [](ExperimentConfig& c) -> auto& { return c.eval.roundtrip_samples; });
    count("eval.landscape_nx", 2, [](ExperimentConfig& c) -> auto& { return c.eval.landscape_nx; });
    count("eval.landscape_ny", 2, [](ExperimentConfig& c) -> auto& { return c.eval.landscape_ny; });
    real("eval.landscape_margin",
         [](ExperimentConfig& c) -> auto& { return c.eval.landscape_margin; });
    t.push_back({"eval.seed",
                 {[](ExperimentConfig& c, const std::string& v) { c.eval.seed = to_seed(v); },
                  [](const ExperimentConfig& c) { return std::to_string(c.eval.seed); }}});
    count("eval.scatter_samples_per_mode", 0,
          [](ExperimentConfig& c) -> auto& { return c.scatter_samples_per_mode; });
    return t;
  }();
  return table;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

void validate(const ExperimentConfig& config) {
  config.train.validate();
  const auto& e = config.eval;
  if (!(e.tau > 0.0 && e.tau < 1.0)) throw ConfigError("eval.tau must lie in (0, 1)");
  if (!(e.landscape_margin >= 0.0)) throw ConfigError("eval.landscape_margin must be >= 0");
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::map<std::string, const Field*> index;
  for (const auto& [key, field] : fields()) index[key] = &field;

  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = index.find(key);
    if (it == index.end()) throw ConfigError(where + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + ": key '" + key + "' repeated");
    try {
      it->second->parse(config, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": key '" + key + "': " + e.what());
    }
  }
  validate(config);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string render_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& [key, field] : fields()) out += key + " = " + field.render(config) + "\n";
  return out;
}

}  // namespace discogan
