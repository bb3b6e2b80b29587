#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "spherelab/density.hpp"

namespace spherelab {

/// A malformed or inconsistent run configuration (as opposed to a
/// mathematical domain error raised by the numeric layer).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Serialize a density.  Kinds:
///   {"dim": n, "kind": "preset", "name": ..., "params": {key: [numbers]}}
///   {"dim": n, "kind": "grid", "level": L, "samples": [numbers]}
///   {"dim": n, "kind": "atoms", "atoms": [{"direction": [..], "weight": w}]}
/// The Custom kind carries an arbitrary callable and cannot be serialized.
nlohmann::json density_to_json(const SphericalDensity& f);
SphericalDensity density_from_json(const nlohmann::json& j);

/// Everything one run of the command-line tool needs.  All fields have
/// defaults, so partial JSON configures only what it mentions.
struct RunConfig {
  std::string command;   ///< transform|derivative|curvature|lindquist|verify|mesh
  int dim = 3;
  double p = 1.0;
  int level = 32;        ///< quadrature level
  int grid = 200;        ///< direction-grid size (curvature, mesh)
  std::string preset;    ///< preset density name
  PresetParams preset_params;
  std::string density_source;  ///< inline JSON ('{...}') or a file path
  std::vector<Eigen::VectorXd> at;  ///< evaluation points
  MultiIndex alpha;                 ///< derivative exponents (empty = unset)
  std::string out;       ///< report path ("" = stdout)
  unsigned seed = 1234;
  std::string suite = "all";  ///< verification suite selector

  /// Structural checks (command known, sizes consistent, ...).  Mathematical
  /// preconditions are enforced by the numeric layer itself.
  void validate() const;
};

nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

/// Build the density a config refers to: density_source (inline JSON when the
/// first non-space character is '{', a file path otherwise) wins over the
/// preset fields.
SphericalDensity resolve_density(const RunConfig& cfg);

nlohmann::json vector_to_json(const Eigen::Ref<const Eigen::VectorXd>& v);
Eigen::VectorXd vector_from_json(const nlohmann::json& j);

}  // namespace spherelab
