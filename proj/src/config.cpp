#include "armax_reach/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "armax_reach/errors.hpp"

namespace armax_reach {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError("config error at " + path + ": " + message);
}

const json& require(const json& node, const std::string& path, const char* key) {
  auto it = node.find(key);
  if (it == node.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

double as_number(const json& node, const std::string& path) {
  if (!node.is_number()) fail(path, "expected a number");
  return node.get<double>();
}

int as_int(const json& node, const std::string& path) {
  if (!node.is_number_integer()) fail(path, "expected an integer");
  return node.get<int>();
}

Eigen::VectorXd parse_vector(const json& node, const std::string& path) {
  if (!node.is_array()) fail(path, "expected an array of numbers");
  Eigen::VectorXd out(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = as_number(node[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

// Matrices are row-major nested arrays; [] is the 0 x 0 matrix.
Eigen::MatrixXd parse_matrix(const json& node, const std::string& path) {
  if (!node.is_array()) fail(path, "expected a matrix as nested arrays");
  if (node.empty()) return Eigen::MatrixXd(0, 0);
  if (!node[0].is_array()) fail(path, "expected rows as arrays");
  const Eigen::Index rows = static_cast<Eigen::Index>(node.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(node[0].size());
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = node[static_cast<std::size_t>(r)];
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      fail(row_path, "ragged matrix: expected " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      out(r, c) = as_number(row[static_cast<std::size_t>(c)],
                            row_path + "[" + std::to_string(c) + "]");
    }
  }
  return out;
}

Zonotope parse_zonotope(const json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "expected an object with 'center' (and 'generators')");
  Zonotope z;
  z.center = parse_vector(require(node, path, "center"), path + ".center");
  if (node.contains("generators")) {
    z.generators = parse_matrix(node["generators"], path + ".generators");
    if (z.generators.size() == 0) z.generators = Eigen::MatrixXd(z.center.size(), 0);
  } else {
    z.generators = Eigen::MatrixXd(z.center.size(), 0);
  }
  if (z.generators.rows() != z.center.size()) {
    fail(path, "generator row count " + std::to_string(z.generators.rows()) +
                   " does not match center length " + std::to_string(z.center.size()));
  }
  return z;
}

SetChannel parse_channel(const json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "expected {\"constant\": set} or {\"per_step\": [sets]}");
  if (node.contains("constant")) {
    return SetChannel::constant(parse_zonotope(node["constant"], path + ".constant"));
  }
  if (node.contains("per_step")) {
    const json& steps = node["per_step"];
    if (!steps.is_array() || steps.empty()) fail(path + ".per_step", "expected a nonempty array");
    std::vector<Zonotope> zs;
    zs.reserve(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
      zs.push_back(parse_zonotope(steps[i], path + ".per_step[" + std::to_string(i) + "]"));
    }
    return SetChannel::per_step(std::move(zs));
  }
  fail(path, "expected key 'constant' or 'per_step'");
}

InputDecomposition parse_decomposition(const json& node, const std::string& path) {
  InputDecomposition d;
  d.u_c = parse_zonotope(require(node, path, "U_c"), path + ".U_c");
  const json& uv = require(node, path, "u_v");
  const std::string uv_path = path + ".u_v";
  if (uv.contains("constant")) {
    d.u_v_constant = true;
    d.u_v.push_back(parse_vector(uv["constant"], uv_path + ".constant"));
  } else if (uv.contains("per_step")) {
    d.u_v_constant = false;
    const json& steps = uv["per_step"];
    if (!steps.is_array() || steps.empty()) fail(uv_path + ".per_step", "expected a nonempty array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      d.u_v.push_back(parse_vector(steps[i], uv_path + ".per_step[" + std::to_string(i) + "]"));
    }
  } else {
    fail(uv_path, "expected key 'constant' or 'per_step'");
  }
  return d;
}

ModelConfig parse_model(const json& node, const std::string& path) {
  ModelConfig mc;
  const std::string type = require(node, path, "type").get<std::string>();
  if (type == "ss") {
    mc.type = ModelConfig::Type::kStateSpace;
    mc.ss.A = parse_matrix(require(node, path, "A"), path + ".A");
    mc.ss.B = parse_matrix(require(node, path, "B"), path + ".B");
    mc.ss.C = parse_matrix(require(node, path, "C"), path + ".C");
    mc.ss.D = parse_matrix(require(node, path, "D"), path + ".D");
    mc.p = as_int(require(node, path, "p"), path + ".p");
    if (node.contains("M")) mc.m_gain = parse_matrix(node["M"], path + ".M");
    try {
      mc.ss.validate();
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
    if (mc.p < 1) fail(path + ".p", "order must be >= 1");
    if (mc.m_gain && (mc.m_gain->rows() != mc.ss.n_x() || mc.m_gain->cols() != mc.ss.n_y())) {
      fail(path + ".M", "observer gain must be n_x x n_y");
    }
  } else if (type == "armax") {
    mc.type = ModelConfig::Type::kArmax;
    ArmaxModel& m = mc.armax;
    m.p = as_int(require(node, path, "p"), path + ".p");
    m.n_y = as_int(require(node, path, "n_y"), path + ".n_y");
    m.n_u = as_int(require(node, path, "n_u"), path + ".n_u");
    m.n_w = as_int(require(node, path, "n_w"), path + ".n_w");
    m.n_v = as_int(require(node, path, "n_v"), path + ".n_v");
    const json& abar = require(node, path, "A_bar");
    const json& bbar = require(node, path, "B_bar");
    if (!abar.is_array() || !bbar.is_array()) fail(path, "A_bar and B_bar must be arrays of matrices");
    for (std::size_t i = 0; i < abar.size(); ++i) {
      m.a_bar.push_back(parse_matrix(abar[i], path + ".A_bar[" + std::to_string(i) + "]"));
    }
    for (std::size_t i = 0; i < bbar.size(); ++i) {
      m.b_bar.push_back(parse_matrix(bbar[i], path + ".B_bar[" + std::to_string(i) + "]"));
    }
    mc.p = m.p;
    try {
      m.validate();
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  } else {
    fail(path + ".type", "expected 'ss' or 'armax'");
  }
  return mc;
}

void cross_validate(ExperimentConfig& cfg) {
  const bool is_ss = cfg.model.type == ModelConfig::Type::kStateSpace;
  const int p = cfg.order();

  Eigen::Index n_y, n_u, n_w, n_v;
  if (is_ss) {
    n_y = cfg.model.ss.n_y();
    n_u = cfg.model.ss.n_u();
    n_w = cfg.model.ss.n_x();
    n_v = cfg.model.ss.n_y();
  } else {
    n_y = cfg.model.armax.n_y;
    n_u = cfg.model.armax.n_u;
    n_w = cfg.model.armax.n_w;
    n_v = cfg.model.armax.n_v;
  }
  if (cfg.u.dim() != n_u) fail("uncertainty.U", "dimension must be n_u = " + std::to_string(n_u));
  if (cfg.w.dim() != n_w) fail("uncertainty.W", "dimension must be " + std::to_string(n_w));
  if (cfg.v.dim() != n_v) fail("uncertainty.V", "dimension must be " + std::to_string(n_v));

  if (static_cast<int>(cfg.y_init.size()) != p) {
    fail("y_init", "expected exactly p = " + std::to_string(p) + " measurements");
  }
  for (std::size_t i = 0; i < cfg.y_init.size(); ++i) {
    if (cfg.y_init[i].size() != n_y) {
      fail("y_init[" + std::to_string(i) + "]", "length must be n_y = " + std::to_string(n_y));
    }
  }

  if (cfg.k_h < 0) fail("k_h", "horizon must be >= 0");
  if (cfg.k_init >= 0 && cfg.k_init < p) fail("k_init", "must be >= p");
  if (cfg.methods.empty()) fail("methods", "nothing to do: at least one method required");
  if (cfg.n_samples < 0) fail("n_samples", "must be >= 0");

  for (Method m : cfg.methods) {
    if (m == Method::kSS && !is_ss) {
      fail("methods", "method SS requires a state-space model source");
    }
    if (m == Method::kArmaxAlg2 && !cfg.decomposition) {
      fail("methods", "method ARMAX-ALG2 requires uncertainty.decomposition");
    }
  }

  // The block-iterating engines query input sets up to p-1 steps past the
  // final reported step.
  const int needed = p + cfg.k_h + p - 1;
  for (const auto* ch : {&cfg.u, &cfg.w, &cfg.v}) {
    if (auto h = ch->horizon(); h && *h < needed) {
      fail("uncertainty", "per-step sets must cover steps 0.." + std::to_string(needed));
    }
  }

  if (cfg.decomposition) {
    const Eigen::Index n_ut = n_u + n_w + n_v;
    if (cfg.decomposition->u_c.dim() != n_ut) {
      fail("uncertainty.decomposition.U_c", "dimension must be n_u + n_w + n_v = " +
                                                std::to_string(n_ut));
    }
    for (const auto& vv : cfg.decomposition->u_v) {
      if (vv.size() != n_ut) {
        fail("uncertainty.decomposition.u_v", "entries must have length " + std::to_string(n_ut));
      }
    }
    if (!cfg.decomposition->u_v_constant &&
        static_cast<int>(cfg.decomposition->u_v.size()) <= needed) {
      fail("uncertainty.decomposition.u_v", "per-step signal must cover steps 0.." +
                                                std::to_string(needed));
    }
    // Consistency utilde_set(i) = U_c + u_v(i), checked on interval hulls.
    const IntervalHull hull_c = interval_hull(cfg.decomposition->u_c);
    const int check_to = std::min(needed, 2 * p + 2);
    for (int i = 0; i <= check_to; ++i) {
      const IntervalHull hu = interval_hull(cfg.u.at(i));
      const IntervalHull hw = interval_hull(cfg.w.at(i));
      const IntervalHull hv = interval_hull(cfg.v.at(i));
      Eigen::VectorXd lower(n_ut), upper(n_ut);
      lower << hu.lower, hw.lower, hv.lower;
      upper << hu.upper, hw.upper, hv.upper;
      const Eigen::VectorXd& shift = cfg.decomposition->u_v_at(i);
      const double dev = std::max((lower - hull_c.lower - shift).cwiseAbs().maxCoeff(),
                                  (upper - hull_c.upper - shift).cwiseAbs().maxCoeff());
      if (dev > 1e-9) {
        fail("uncertainty.decomposition",
             "U_c + u_v(" + std::to_string(i) + ") does not match the channel sets (deviation " +
                 std::to_string(dev) + ")");
      }
    }
  }

  if (cfg.svg_dims[0] < 0 || cfg.svg_dims[0] >= n_y || cfg.svg_dims[1] < 0 ||
      cfg.svg_dims[1] >= n_y || cfg.svg_dims[0] == cfg.svg_dims[1]) {
    if (n_y >= 2) fail("svg_dims", "expected two distinct output dimensions");
    cfg.svg_dims = {0, 0};  // 1-D outputs: polygon output disabled
  }
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Recover the line number from the byte offset for a line-anchored message.
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ConfigError("config error at line " + std::to_string(line) + ": " + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config error: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

const char* method_tag(Method m) {
  switch (m) {
    case Method::kSS: return "SS";
    case Method::kArmax: return "ARMAX";
    case Method::kArmaxDp: return "ARMAX-DP";
    case Method::kArmaxOneshot: return "ARMAX-ONESHOT";
    case Method::kArmaxAlg1: return "ARMAX-ALG1";
    case Method::kArmaxAlg2: return "ARMAX-ALG2";
  }
  return "?";
}

Method method_from_tag(const std::string& tag) {
  for (Method m : {Method::kSS, Method::kArmax, Method::kArmaxDp, Method::kArmaxOneshot,
                   Method::kArmaxAlg1, Method::kArmaxAlg2}) {
    if (tag == method_tag(m)) return m;
  }
  throw ConfigError("config error at methods: unknown method '" + tag + "'");
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  const json root = parse_text(json_text);
  if (!root.is_object()) throw ConfigError("config error: top level must be an object");

  ExperimentConfig cfg;
  cfg.model = parse_model(require(root, "", "model"), "model");

  const json& unc = require(root, "", "uncertainty");
  cfg.u = parse_channel(require(unc, "uncertainty", "U"), "uncertainty.U");
  cfg.w = parse_channel(require(unc, "uncertainty", "W"), "uncertainty.W");
  cfg.v = parse_channel(require(unc, "uncertainty", "V"), "uncertainty.V");
  if (unc.contains("decomposition")) {
    cfg.decomposition = parse_decomposition(unc["decomposition"], "uncertainty.decomposition");
  }

  const json& yi = require(root, "", "y_init");
  if (!yi.is_array()) fail("y_init", "expected an array of measurement vectors");
  for (std::size_t i = 0; i < yi.size(); ++i) {
    cfg.y_init.push_back(parse_vector(yi[i], "y_init[" + std::to_string(i) + "]"));
  }

  cfg.k_h = as_int(require(root, "", "k_h"), "k_h");
  if (root.contains("k_init")) cfg.k_init = as_int(root["k_init"], "k_init");
  const json& methods = require(root, "", "methods");
  if (!methods.is_array()) fail("methods", "expected an array of method tags");
  for (const auto& m : methods) {
    if (!m.is_string()) fail("methods", "expected strings");
    cfg.methods.push_back(method_from_tag(m.get<std::string>()));
  }
  if (root.contains("n_samples")) cfg.n_samples = as_int(root["n_samples"], "n_samples");
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer()) {
      fail("seed", "expected an integer");
    }
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("svg_dims")) {
    const json& sd = root["svg_dims"];
    if (!sd.is_array() || sd.size() != 2) fail("svg_dims", "expected two indices");
    cfg.svg_dims = {as_int(sd[0], "svg_dims[0]"), as_int(sd[1], "svg_dims[1]")};
  }

  cross_validate(cfg);
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(slurp(path));
}

BenchGridConfig parse_bench_grid(const std::string& json_text) {
  const json root = parse_text(json_text);
  if (!root.is_object()) throw ConfigError("config error: grid must be an object");
  BenchGridConfig grid;
  auto read_axis = [&](const char* key, std::vector<int>& out) {
    if (!root.contains(key)) return;
    const json& axis = root[key];
    out.clear();
    if (axis.is_array()) {
      for (const auto& v : axis) out.push_back(as_int(v, key));
    } else {
      out.push_back(as_int(axis, key));
    }
    if (out.empty()) fail(key, "axis must be nonempty");
    for (int v : out) {
      if (v < 1) fail(key, "axis values must be >= 1");
    }
  };
  read_axis("f_k", grid.f_k);
  read_axis("f_n", grid.f_n);
  read_axis("p", grid.p);
  const json& methods = require(root, "", "methods");
  if (!methods.is_array() || methods.empty()) fail("methods", "expected a nonempty array");
  for (const auto& m : methods) grid.methods.push_back(method_from_tag(m.get<std::string>()));
  for (Method m : grid.methods) {
    if (m == Method::kSS) fail("methods", "the benchmark sweeps ARMAX engines only");
  }
  if (root.contains("seed")) grid.seed = root["seed"].get<std::uint64_t>();
  if (root.contains("set_order")) grid.set_order = as_int(root["set_order"], "set_order");
  if (grid.set_order < 1) fail("set_order", "must be >= 1");
  return grid;
}

BenchGridConfig load_bench_grid(const std::string& path) {
  return parse_bench_grid(slurp(path));
}

}  // namespace armax_reach
