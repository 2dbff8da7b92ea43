#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "nlskdv/errors.hpp"

namespace nlskdv {

enum class Subcommand { Simulate, Scaling, Lemmas, Multipliers, Picard, Norms };

std::string subcommand_name(Subcommand s);
Subcommand parse_subcommand(const std::string& name);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class MissingFileError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};
class ConfigParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};
class UnknownKeyError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};
class RangeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Fully resolved run description: a subcommand's parameters with defaults
/// applied, plus the seed and output directory.
struct RunConfig {
  Subcommand subcommand = Subcommand::Simulate;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  double get_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  const std::string& get_string(const std::string& key) const;
};

/// Parses a `key = value` file ('#' starts a comment).  The subcommand comes
/// from the file's `subcommand` key.  Duplicate keys, unknown keys (all
/// listed), malformed values and out-of-range values raise distinct errors;
/// omitted keys take their documented defaults.
RunConfig load_config(const std::string& path);

/// The raw key/value pairs of a config file, before schema resolution.
std::map<std::string, std::string> load_config_raw(const std::string& path);

/// Same validation applied to an in-memory key/value list.
RunConfig resolve_config(const std::map<std::string, std::string>& raw);

/// FNV-1a hash of the canonical key=value rendering; stable across runs.
std::string config_hash(const RunConfig& config);

/// Canonical manifest text: round-trips through load_config (provenance
/// rides in comment lines).
std::string render_manifest(const RunConfig& config, const std::string& hash,
                            const std::string& timestamp, const std::string& status,
                            const std::string& error_message = "");

}  // namespace nlskdv
