#include "nlskdv/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace nlskdv {

namespace {

struct KeySpec {
  const char* name;
  const char* fallback;  // nullptr => required
  // Validator returns an error message or empty string.
  std::string (*check)(const std::string&);
};

std::string ok(const std::string&) { return {}; }

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

bool parse_int(const std::string& s, std::int64_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string check_positive(const std::string& s) {
  double v;
  if (!parse_double(s, v)) return "not a number";
  if (!(v > 0.0)) return "must be positive";
  return {};
}

std::string check_nonneg(const std::string& s) {
  double v;
  if (!parse_double(s, v)) return "not a number";
  if (!(v >= 0.0)) return "must be nonnegative";
  return {};
}

std::string check_number(const std::string& s) {
  double v;
  if (!parse_double(s, v)) return "not a number";
  return {};
}

std::string check_even_modes(const std::string& s) {
  std::int64_t v;
  if (!parse_int(s, v)) return "not an integer";
  if (v < 4 || v % 2 != 0) return "must be an even integer >= 4";
  return {};
}

std::string check_pos_int(const std::string& s) {
  std::int64_t v;
  if (!parse_int(s, v)) return "not an integer";
  if (v < 1) return "must be a positive integer";
  return {};
}

std::string check_uint(const std::string& s) {
  std::int64_t v;
  if (!parse_int(s, v)) return "not an integer";
  if (v < 0) return "must be nonnegative";
  return {};
}

std::string check_bool(const std::string& s) {
  if (s == "true" || s == "false") return {};
  return "must be true or false";
}

std::string check_family(const std::string& s) {
  if (s == "UV1" || s == "UV2" || s == "DU2_1" || s == "DU2_2") return {};
  return "must be one of UV1, UV2, DU2_1, DU2_2";
}

std::string check_weight_family(const std::string& s) {
  if (s == "schrodinger" || s == "airy" || s == "both") return {};
  return "must be schrodinger, airy or both";
}

std::string check_dtau(const std::string& s) {
  double v;
  if (!parse_double(s, v)) return "not a number";
  if (!(v > 0.0) || v > 0.25) return "must lie in (0, 1/4]";
  return {};
}

const std::vector<KeySpec>& schema(Subcommand sub) {
  static const std::vector<KeySpec> simulate = {
      {"alpha", "1", check_number},      {"beta", "0", check_number},
      {"gamma", "1", check_number},      {"N", "64", check_even_modes},
      {"dt", "1e-3", check_positive},    {"T", "0.5", check_positive},
      {"record_every", "10", check_pos_int}, {"dealias", "true", check_bool},
      {"u_amp", "0.5", check_nonneg},    {"v_amp", "0.5", check_nonneg},
  };
  static const std::vector<KeySpec> scaling = {
      {"family", nullptr, check_family}, {"k", "0", check_number},
      {"s", "0", check_number},          {"b", "0.5", check_number},
      {"N_min", "16", check_even_modes}, {"N_max", "512", check_even_modes},
      {"dtau", "0.125", check_dtau},
  };
  static const std::vector<KeySpec> lemmas = {
      {"theta", "0.9", check_positive},       {"theta_tilde", "0.9", check_positive},
      {"a_min", "16", check_positive},        {"a_max", "16384", check_positive},
      {"cubic_theta", "0.5", check_positive}, {"linear_theta", "0.6", check_positive},
      {"eps", "0.2", check_positive},
  };
  static const std::vector<KeySpec> multipliers = {
      {"truncation", "256", check_pos_int}, {"one_minus", "0.9", check_positive},
      {"uv_k", "1.5", check_number},        {"uv_s", "0", check_number},
      {"du2_k", "0.25", check_number},      {"du2_s", "0", check_number},
  };
  static const std::vector<KeySpec> picard = {
      {"N", "64", check_even_modes},   {"T", "0.1", check_positive},
      {"samples", "32", check_pos_int}, {"k", "1", check_number},
      {"s", "1", check_number},        {"tol", "1e-10", check_positive},
      {"max_iters", "12", check_pos_int}, {"u_amp", "1e-3", check_nonneg},
      {"v_amp", "1e-3", check_nonneg}, {"alpha", "1", check_number},
      {"beta", "1", check_number},     {"gamma", "1", check_number},
      {"dealias", "true", check_bool}, {"cross_check", "true", check_bool},
  };
  static const std::vector<KeySpec> norms = {
      {"members", "50", check_pos_int},  {"mode_range", "8", check_pos_int},
      {"dtau", "0.125", check_dtau},     {"family", "both", check_weight_family},
  };
  switch (sub) {
    case Subcommand::Simulate: return simulate;
    case Subcommand::Scaling: return scaling;
    case Subcommand::Lemmas: return lemmas;
    case Subcommand::Multipliers: return multipliers;
    case Subcommand::Picard: return picard;
    case Subcommand::Norms: return norms;
  }
  throw ConfigError("unhandled subcommand schema");
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::Simulate: return "simulate";
    case Subcommand::Scaling: return "scaling";
    case Subcommand::Lemmas: return "lemmas";
    case Subcommand::Multipliers: return "multipliers";
    case Subcommand::Picard: return "picard";
    case Subcommand::Norms: return "norms";
  }
  return "unknown";
}

Subcommand parse_subcommand(const std::string& name) {
  for (Subcommand s : {Subcommand::Simulate, Subcommand::Scaling, Subcommand::Lemmas,
                       Subcommand::Multipliers, Subcommand::Picard, Subcommand::Norms})
    if (subcommand_name(s) == name) return s;
  throw ConfigParseError("unknown subcommand '" + name + "'");
}

double RunConfig::get_double(const std::string& key) const {
  double v;
  if (!parse_double(params.at(key), v)) throw RangeError("key '" + key + "' is not a number");
  return v;
}

std::int64_t RunConfig::get_int(const std::string& key) const {
  std::int64_t v;
  if (!parse_int(params.at(key), v)) throw RangeError("key '" + key + "' is not an integer");
  return v;
}

bool RunConfig::get_bool(const std::string& key) const { return params.at(key) == "true"; }

const std::string& RunConfig::get_string(const std::string& key) const { return params.at(key); }

RunConfig resolve_config(const std::map<std::string, std::string>& raw) {
  auto it = raw.find("subcommand");
  if (it == raw.end()) throw ConfigParseError("missing required key 'subcommand'");
  RunConfig config;
  config.subcommand = parse_subcommand(it->second);

  const auto& specs = schema(config.subcommand);
  std::vector<std::string> unknown;
  for (const auto& [key, value] : raw) {
    if (key == "subcommand" || key == "seed" || key == "output_dir") continue;
    bool known = std::any_of(specs.begin(), specs.end(),
                             [&](const KeySpec& ks) { return key == ks.name; });
    if (!known) unknown.push_back(key);
  }
  if (!unknown.empty()) {
    std::string msg = "unknown keys for subcommand '" + subcommand_name(config.subcommand) + "':";
    for (const auto& k : unknown) msg += " " + k;
    throw UnknownKeyError(msg);
  }

  if (auto s = raw.find("seed"); s != raw.end()) {
    if (auto err = check_uint(s->second); !err.empty())
      throw RangeError("key 'seed' " + err);
    config.seed = static_cast<std::uint64_t>(std::stoll(s->second));
  }
  if (auto o = raw.find("output_dir"); o != raw.end()) {
    if (o->second.empty()) throw RangeError("key 'output_dir' must be nonempty");
    config.output_dir = o->second;
  }

  for (const auto& ks : specs) {
    auto found = raw.find(ks.name);
    std::string value;
    if (found != raw.end()) {
      value = found->second;
    } else if (ks.fallback) {
      value = ks.fallback;
    } else {
      throw ConfigParseError(std::string("missing required key '") + ks.name + "'");
    }
    if (auto err = ks.check(value); !err.empty())
      throw RangeError(std::string("key '") + ks.name + "' " + err + " (got '" + value + "')");
    config.params[ks.name] = value;
  }
  return config;
}

std::map<std::string, std::string> load_config_raw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingFileError("config file not found: " + path);

  std::map<std::string, std::string> raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigParseError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigParseError("line " + std::to_string(lineno) + ": empty key");
    if (raw.count(key))
      throw ConfigParseError("duplicate key '" + key + "' at line " + std::to_string(lineno));
    raw.emplace(std::move(key), std::move(value));
  }
  return raw;
}

RunConfig load_config(const std::string& path) { return resolve_config(load_config_raw(path)); }

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  mix("subcommand=" + subcommand_name(config.subcommand));
  mix("seed=" + std::to_string(config.seed));
  for (const auto& [k, v] : config.params) mix(k + "=" + v);
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

std::string render_manifest(const RunConfig& config, const std::string& hash,
                            const std::string& timestamp, const std::string& status,
                            const std::string& error_message) {
  std::ostringstream out;
  out << "# config_hash = " << hash << "\n";
  out << "# artifact_version = " << NLSKDV_VERSION << "\n";
  out << "# timestamp = " << timestamp << "\n";
  out << "# status = " << status << "\n";
  if (!error_message.empty()) out << "# error = " << error_message << "\n";
  out << "subcommand = " << subcommand_name(config.subcommand) << "\n";
  out << "seed = " << config.seed << "\n";
  out << "output_dir = " << config.output_dir << "\n";
  for (const auto& [k, v] : config.params) out << k << " = " << v << "\n";
  return out.str();
}

}  // namespace nlskdv
