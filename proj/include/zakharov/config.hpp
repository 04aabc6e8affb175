#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "zakharov/flow.hpp"
#include "zakharov/propagators.hpp"

namespace zakharov {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kVersionTag = "zakharov-lab 0.1.0";

struct SimConfig {
  double alpha = 1.0;
  double beta = 0.5;
  int grid_size = 64;
  int trunc_N = 16;
  double dt = 1e-3;
  double T = 1.0;
  std::string scheme = "strang";  ///< strang | picard_oracle
  std::uint64_t seed = 1;
  std::vector<int> probe_modes{1};
  std::string output = "out";
  double c_step = 0.1;
  double c_res = 2.0;
  double fd_step = 1e-5;

  // initial data
  double data_norm = 0.5;               ///< target ||z0||_H
  int data_band = 16;                   ///< support |k| <= data_band
  std::string data_profile = "gaussian";  ///< gaussian | power
  double data_decay = 2.0;              ///< exponent for the power profile

  // sweeps
  std::vector<int> ns{4, 8, 16, 32};
  std::vector<double> dts{4e-3, 2e-3, 1e-3};
  int samples = 32;
  int pairs = 50;
  double radius = 0.1;
  bool nonlinear = true;

  double tol_mass = 1e-12;
  double tol_symplectic = 1e-5;
  int jobs = 1;
  int picard_iterations = 8;
  int picard_nodes = 33;
  double picard_window = 1e-2;
  int sample_stride = 1;

  PhysicalConstants constants() const { return {alpha, beta}; }
  SchemeSpec scheme_spec() const;

  /// Throws ConfigError naming the violated invariant.
  void validate() const;

  bool operator==(const SimConfig&) const = default;
};

/// Parses `key = value` lines; '#' starts a comment. Unknown keys and
/// malformed values raise ConfigError naming the line and key.
SimConfig parse_config(const std::string& text, const std::string& source = "<config>");

/// Applies one assignment to cfg (shared by the parser and CLI overrides).
void set_config_value(SimConfig& cfg, const std::string& key, const std::string& value);

/// Names of every accepted key, in manifest order.
const std::vector<std::string>& config_keys();

/// Reads a key=value file or a manifest.json written by save_manifest.
SimConfig load_config(const std::filesystem::path& path);

/// Canonical `key = value` text for cfg.
std::string format_config(const SimConfig& cfg);

/// Writes dir/manifest.json with the config, version tag, study name and
/// output file list. Returns the manifest path.
std::filesystem::path save_manifest(const SimConfig& cfg, const std::string& study,
                                    const std::vector<std::string>& outputs, const std::filesystem::path& dir);

/// %.17g
std::string format_double(double v);

}  // namespace zakharov
