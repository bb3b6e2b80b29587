#include "spherelab/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace spherelab {

namespace {

using nlohmann::json;

json params_to_json(const PresetParams& params) {
  json j = json::object();
  for (const auto& [key, vals] : params) j[key] = vals;
  return j;
}

PresetParams params_from_json(const json& j) {
  if (!j.is_object())
    throw ConfigError("density params must be an object of named numbers");
  PresetParams params;
  for (const auto& [key, val] : j.items()) {
    if (val.is_number()) {
      params[key] = {val.get<double>()};
    } else if (val.is_array()) {
      params[key] = val.get<std::vector<double>>();
    } else {
      throw ConfigError("density param '" + key +
                        "' must be a number or an array of numbers");
    }
  }
  return params;
}

}  // namespace

json vector_to_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Eigen::VectorXd vector_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError("expected an array of numbers");
    v[i++] = x.get<double>();
  }
  return v;
}

json density_to_json(const SphericalDensity& f) {
  json j;
  j["dim"] = f.dim();
  switch (f.kind()) {
    case SphericalDensity::Kind::Preset:
      j["kind"] = "preset";
      j["name"] = f.preset_name();
      j["params"] = params_to_json(f.preset_params());
      break;
    case SphericalDensity::Kind::Grid: {
      j["kind"] = "grid";
      j["level"] = f.grid_level();
      j["samples"] = std::vector<double>(
          f.grid_samples().data(),
          f.grid_samples().data() + f.grid_samples().size());
      break;
    }
    case SphericalDensity::Kind::Atoms: {
      j["kind"] = "atoms";
      json arr = json::array();
      for (const Atom& a : f.atom_list()) {
        json ja;
        ja["direction"] = vector_to_json(a.direction);
        ja["weight"] = a.weight;
        arr.push_back(ja);
      }
      j["atoms"] = arr;
      break;
    }
    case SphericalDensity::Kind::Custom:
      throw std::invalid_argument(
          "density_to_json: a custom callable density has no serialized form");
  }
  return j;
}

SphericalDensity density_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("density JSON must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw ConfigError("density JSON needs an integer 'dim'");
  const int dim = j["dim"].get<int>();
  const std::string kind = j.value("kind", "preset");
  if (kind == "preset") {
    if (!j.contains("name") || !j["name"].is_string())
      throw ConfigError("preset density needs a string 'name'");
    PresetParams params;
    if (j.contains("params")) params = params_from_json(j["params"]);
    return SphericalDensity::preset(dim, j["name"].get<std::string>(), params);
  }
  if (kind == "grid") {
    if (!j.contains("level") || !j.contains("samples"))
      throw ConfigError("grid density needs 'level' and 'samples'");
    return SphericalDensity::grid(dim, j["level"].get<int>(),
                                  vector_from_json(j["samples"]));
  }
  if (kind == "atoms") {
    if (!j.contains("atoms") || !j["atoms"].is_array())
      throw ConfigError("atomic density needs an 'atoms' array");
    std::vector<Atom> atoms;
    for (const auto& ja : j["atoms"]) {
      if (!ja.is_object() || !ja.contains("direction") ||
          !ja.contains("weight"))
        throw ConfigError("each atom needs 'direction' and 'weight'");
      Atom a;
      a.direction = vector_from_json(ja["direction"]);
      a.weight = ja["weight"].get<double>();
      atoms.push_back(a);
    }
    return SphericalDensity::atoms(dim, atoms);
  }
  throw ConfigError("unknown density kind '" + kind +
                    "' (expected preset, grid, or atoms)");
}

void RunConfig::validate() const {
  static const std::set<std::string> kCommands = {
      "transform", "derivative", "curvature", "lindquist", "verify", "mesh"};
  if (kCommands.find(command) == kCommands.end())
    throw ConfigError("unknown command '" + command + "'");
  if (dim < 2) throw ConfigError("dim must be at least 2");
  if (level < 1) throw ConfigError("level must be at least 1");
  if (grid < 1) throw ConfigError("grid must be at least 1");
  if (!(p >= 1.0)) throw ConfigError("p must be at least 1");
  for (const auto& x : at)
    if (x.size() != dim)
      throw ConfigError("an evaluation point has " +
                        std::to_string(x.size()) + " coordinates; dim is " +
                        std::to_string(dim));
  if (alpha.size() != 0) {
    if (alpha.size() != dim)
      throw ConfigError("alpha needs one exponent per coordinate");
    for (Eigen::Index i = 0; i < alpha.size(); ++i)
      if (alpha[i] < 0) throw ConfigError("alpha exponents must be >= 0");
  }
  if (command == "derivative" && alpha.size() == 0)
    throw ConfigError("the derivative command needs --alpha");
  if ((command == "derivative" || command == "lindquist") && at.empty())
    throw ConfigError("the " + command + " command needs at least one --at");
  static const std::set<std::string> kSuites = {"derivatives", "inversion",
                                                "convexity", "all"};
  if (command == "verify" && kSuites.find(suite) == kSuites.end())
    throw ConfigError("unknown suite '" + suite +
                      "' (expected derivatives, inversion, convexity, all)");
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["dim"] = cfg.dim;
  j["p"] = cfg.p;
  j["level"] = cfg.level;
  j["grid"] = cfg.grid;
  j["preset"] = cfg.preset;
  j["params"] = params_to_json(cfg.preset_params);
  j["density"] = cfg.density_source;
  json at = json::array();
  for (const auto& x : cfg.at) at.push_back(vector_to_json(x));
  j["at"] = at;
  json alpha = json::array();
  for (Eigen::Index i = 0; i < cfg.alpha.size(); ++i)
    alpha.push_back(cfg.alpha[i]);
  j["alpha"] = alpha;
  j["out"] = cfg.out;
  j["seed"] = cfg.seed;
  j["suite"] = cfg.suite;
  return j;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config JSON must be an object");
  RunConfig cfg;
  try {
    cfg.command = j.value("command", cfg.command);
    cfg.dim = j.value("dim", cfg.dim);
    cfg.p = j.value("p", cfg.p);
    cfg.level = j.value("level", cfg.level);
    cfg.grid = j.value("grid", cfg.grid);
    cfg.preset = j.value("preset", cfg.preset);
    if (j.contains("params")) cfg.preset_params = params_from_json(j["params"]);
    cfg.density_source = j.value("density", cfg.density_source);
    if (j.contains("at"))
      for (const auto& x : j["at"]) cfg.at.push_back(vector_from_json(x));
    if (j.contains("alpha")) {
      const auto& ja = j["alpha"];
      if (!ja.is_array()) throw ConfigError("alpha must be an integer array");
      cfg.alpha.resize(static_cast<Eigen::Index>(ja.size()));
      Eigen::Index i = 0;
      for (const auto& x : ja) cfg.alpha[i++] = x.get<int>();
    }
    cfg.out = j.value("out", cfg.out);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.suite = j.value("suite", cfg.suite);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config JSON: ") + e.what());
  }
  return cfg;
}

SphericalDensity resolve_density(const RunConfig& cfg) {
  if (!cfg.density_source.empty()) {
    const auto first = cfg.density_source.find_first_not_of(" \t\r\n");
    std::string text;
    if (first != std::string::npos && cfg.density_source[first] == '{') {
      text = cfg.density_source;
    } else {
      std::ifstream in(cfg.density_source);
      if (!in)
        throw ConfigError("cannot open density file '" + cfg.density_source +
                          "'");
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("density JSON does not parse: ") +
                        e.what());
    }
    SphericalDensity f = density_from_json(j);
    if (f.dim() != cfg.dim)
      throw ConfigError("density dim " + std::to_string(f.dim()) +
                        " does not match config dim " +
                        std::to_string(cfg.dim));
    return f;
  }
  if (!cfg.preset.empty()) {
    try {
      return SphericalDensity::preset(cfg.dim, cfg.preset, cfg.preset_params);
    } catch (const std::invalid_argument& e) {
      // A density that cannot even be constructed is a configuration
      // problem, not a numerical one.
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("no density given: set --preset or --density");
}

}  // namespace spherelab
