#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpesym/evolve.hpp"

namespace gpesym {

/// Flat dotted-key configuration. See docs/config_schema.md for every key.
struct RunConfig {
  /// Defaults exercise every coefficient: ρ, a, b, c and κ are all nonzero.
  QuadraticModel model{1.0, 0.3, 1.2, 0.4, 0.3, 0.5, 0.6, 1.0};
  /// Overrides κ̃ for the closed-form side only; the evolution keeps κ‖ψ₀‖².
  std::optional<double> kappa_tilde;

  std::optional<double> grid_half_width;
  std::optional<std::size_t> grid_points;

  EvolutionConfig evolution;

  std::string workflow = "verify";
  std::vector<int> nus = {0, 1, 2};
  std::vector<std::complex<double>> alphas = {{0.0, 0.0}, {0.5, 0.5}};
  std::vector<double> times = {0.0};
  std::string output_dir = "out";

  std::string sweep_param = "kappa";
  std::vector<double> sweep_values = {0.0, 0.1, 0.2};

  /// Effective parameters for the closed-form side, honouring kappa_tilde.
  EffectiveParams effective() const;
  /// Grid override if configured, otherwise `designed`.
  Grid grid_or(const Grid& designed) const;
};

/// Parses "re±imi", "±imi" or a plain real. The imaginary sign is explicit.
std::complex<double> parse_complex(const std::string& text);

/// `source` names the input in error messages ("file.cfg", "<defaults>").
RunConfig parse_config(const std::string& text, const std::string& source);
RunConfig load_config(const std::string& path);
/// GPESYM_<KEY> with dots replaced by underscores, upper case, e.g. GPESYM_MODEL_MU.
void apply_env_overrides(RunConfig& cfg);
void validate(const RunConfig& cfg);

/// Every recognised key, in schema order.
const std::vector<std::string>& config_keys();
std::string env_name(const std::string& key);

}  // namespace gpesym
