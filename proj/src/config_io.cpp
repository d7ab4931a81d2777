#include "swipt/config_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swipt/errors.hpp"

namespace swipt {

namespace {

using nlohmann::json;

template <class T>
T get_as(const json& value, const std::string& field) {
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!value.is_boolean()) throw ConfigError(field, "expected a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!value.is_number_integer()) throw ConfigError(field, "expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (value.is_number_integer() && !value.is_number_unsigned() && value.get<long long>() < 0)
          throw ConfigError(field, "expected a non-negative integer");
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!value.is_number()) throw ConfigError(field, "expected a number");
    } else {
      if (!value.is_string()) throw ConfigError(field, "expected a string");
    }
    return value.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(field, e.what());
  }
}

RMatrix parse_alpha(const json& value) {
  if (!value.is_array() || value.empty()) throw ConfigError("alpha", "expected a K x K array");
  const auto rows = static_cast<Eigen::Index>(value.size());
  RMatrix out(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = value[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
      throw ConfigError("alpha", "expected a K x K array");
    }
    for (Eigen::Index j = 0; j < rows; ++j) {
      out(i, j) = get_as<double>(row[static_cast<std::size_t>(j)], "alpha");
    }
  }
  return out;
}

void apply_solver(const json& node, SolverSettings& s) {
  if (!node.is_object()) throw ConfigError("solver", "expected an object");
  for (const auto& [key, value] : node.items()) {
    const std::string field = "solver." + key;
    if (key == "outer_max_iterations") s.outer_max_iterations = get_as<int>(value, field);
    else if (key == "outer_tolerance") s.outer_tolerance = get_as<double>(value, field);
    else if (key == "step_fraction") s.step_fraction = get_as<double>(value, field);
    else if (key == "dual_method") {
      try {
        s.dual_method = parse_dual_method(get_as<std::string>(value, field));
      } catch (const ConfigError& e) {
        throw ConfigError(field, e.what());
      }
    } else if (key == "dual_max_iterations") s.dual_max_iterations = get_as<int>(value, field);
    else if (key == "subgradient_step") s.subgradient_step = get_as<double>(value, field);
    else if (key == "kkt_tolerance") s.kkt_tolerance = get_as<double>(value, field);
    else if (key == "pd_margin") s.pd_margin = get_as<double>(value, field);
    else if (key == "waterfill_max_sweeps") s.waterfill_max_sweeps = get_as<int>(value, field);
    else if (key == "waterfill_tolerance") s.waterfill_tolerance = get_as<double>(value, field);
    else if (key == "feasibility_tolerance") s.feasibility_tolerance = get_as<double>(value, field);
    else if (key == "tilt_max_exponent") s.tilt_max_exponent = get_as<int>(value, field);
    else throw ConfigError(field, "unknown key");
  }
}

std::vector<Scheme> parse_schemes(const json& value) {
  std::vector<Scheme> out;
  if (value.is_string()) {
    out.push_back(parse_scheme(value.get<std::string>()));
  } else if (value.is_array() && !value.empty()) {
    for (const auto& item : value) out.push_back(parse_scheme(get_as<std::string>(item, "scheme")));
  } else {
    throw ConfigError("scheme", "expected a scheme name or a non-empty list of names");
  }
  return out;
}

}  // namespace

SystemConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  if (!root.is_object()) throw ConfigError("<document>", "expected a JSON object");

  SystemConfig c;
  bool has_alpha = false;
  double alpha_cross = -1.0;
  for (const auto& [key, value] : root.items()) {
    if (key == "k") c.k = get_as<int>(value, key);
    else if (key == "k1") c.k1 = get_as<int>(value, key);
    else if (key == "m") c.m = get_as<int>(value, key);
    else if (key == "p_max") c.p_max = get_as<double>(value, key);
    else if (key == "noise_power") c.noise_power = get_as<double>(value, key);
    else if (key == "path_loss") c.path_loss = get_as<double>(value, key);
    else if (key == "alpha") {
      c.alpha = parse_alpha(value);
      has_alpha = true;
    } else if (key == "alpha_cross") alpha_cross = get_as<double>(value, key);
    else if (key == "zeta") c.zeta = get_as<double>(value, key);
    else if (key == "scheme") c.schemes = parse_schemes(value);
    else if (key == "tilt_decay") c.tilt_decay = get_as<double>(value, key);
    else if (key == "ebar_grid_size") c.ebar_grid_size = get_as<int>(value, key);
    else if (key == "trials") c.trials = get_as<int>(value, key);
    else if (key == "seed") c.seed = get_as<std::uint64_t>(value, key);
    else if (key == "variant") c.variant = parse_variant(get_as<std::string>(value, key));
    else if (key == "solver") apply_solver(value, c.solver);
    else if (key == "select_eh") c.select_eh = get_as<bool>(value, key);
    else if (key == "reselect_per_point") c.reselect_per_point = get_as<bool>(value, key);
    else if (key == "noise_in_energy") c.noise_in_energy = get_as<bool>(value, key);
    else if (key == "eh_phase_rate") c.eh_phase_rate = get_as<bool>(value, key);
    else if (key == "parallelism") c.parallelism = get_as<int>(value, key);
    else throw ConfigError(key, "unknown key");
  }
  if (root.contains("alpha_cross")) {
    if (has_alpha) throw ConfigError("alpha_cross", "give either alpha or alpha_cross, not both");
    if (!(alpha_cross >= 0.0 && alpha_cross <= 1.0)) {
      throw ConfigError("alpha_cross", "must lie in [0, 1]");
    }
    c.set_uniform_cross(alpha_cross);
  }
  c.validate();
  return c;
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string dump_config(const SystemConfig& c) {
  nlohmann::ordered_json j;
  j["k"] = c.k;
  j["k1"] = c.k1;
  j["m"] = c.m;
  j["p_max"] = c.p_max;
  j["noise_power"] = c.noise_power;
  j["path_loss"] = c.path_loss;
  const RMatrix w = c.link_weights();
  auto alpha = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index k = 0; k < w.cols(); ++k) row.push_back(w(i, k));
    alpha.push_back(row);
  }
  j["alpha"] = alpha;
  j["zeta"] = c.zeta;
  auto schemes = nlohmann::ordered_json::array();
  for (Scheme s : c.schemes) schemes.push_back(std::string(to_string(s)));
  j["scheme"] = schemes;
  j["tilt_decay"] = c.tilt_decay;
  j["ebar_grid_size"] = c.ebar_grid_size;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["variant"] = std::string(to_string(c.variant));
  nlohmann::ordered_json s;
  s["outer_max_iterations"] = c.solver.outer_max_iterations;
  s["outer_tolerance"] = c.solver.outer_tolerance;
  s["step_fraction"] = c.solver.step_fraction;
  s["dual_method"] = std::string(to_string(c.solver.dual_method));
  s["dual_max_iterations"] = c.solver.dual_max_iterations;
  s["subgradient_step"] = c.solver.subgradient_step;
  s["kkt_tolerance"] = c.solver.kkt_tolerance;
  s["pd_margin"] = c.solver.pd_margin;
  s["waterfill_max_sweeps"] = c.solver.waterfill_max_sweeps;
  s["waterfill_tolerance"] = c.solver.waterfill_tolerance;
  s["feasibility_tolerance"] = c.solver.feasibility_tolerance;
  s["tilt_max_exponent"] = c.solver.tilt_max_exponent;
  j["solver"] = s;
  j["select_eh"] = c.select_eh;
  j["reselect_per_point"] = c.reselect_per_point;
  j["noise_in_energy"] = c.noise_in_energy;
  j["eh_phase_rate"] = c.eh_phase_rate;
  // parallelism is not part of the fingerprint.
  return j.dump(2);
}

std::uint64_t config_fingerprint(const SystemConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : dump_config(config)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace swipt
