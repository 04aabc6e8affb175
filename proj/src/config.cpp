#include "zakharov/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace zakharov {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos == v.size() && std::isfinite(d)) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
}

long long to_integer(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long i = std::stoll(v, &pos);
    if (pos == v.size()) return i;
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
}

int to_int(const std::string& key, const std::string& v) {
  const long long i = to_integer(key, v);
  if (i < INT32_MIN || i > INT32_MAX) throw ConfigError("key '" + key + "': integer out of range");
  return static_cast<int>(i);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    if (!v.empty() && v[0] != '-') {
      const unsigned long long i = std::stoull(v, &pos);
      if (pos == v.size()) return i;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': expected a nonnegative integer, got '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (!out.empty() && out.back().empty() && v.back() == ',') out.pop_back();
  return out;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, double>)
      out += format_double(xs[i]);
    else
      out += std::to_string(xs[i]);
  }
  return out;
}

struct Entry {
  std::string name;
  std::function<void(SimConfig&, const std::string&)> set;
  std::function<nlohmann::ordered_json(const SimConfig&)> get;
};

template <class T>
nlohmann::ordered_json as_json(const T& v) {
  return nlohmann::ordered_json(v);
}

#define ZK_DOUBLE(field) \
  Entry{#field, [](SimConfig& c, const std::string& v) { c.field = to_double(#field, v); }, [](const SimConfig& c) { return as_json(c.field); }}
#define ZK_INT(field) \
  Entry{#field, [](SimConfig& c, const std::string& v) { c.field = to_int(#field, v); }, [](const SimConfig& c) { return as_json(c.field); }}
#define ZK_STRING(field) \
  Entry{#field, [](SimConfig& c, const std::string& v) { c.field = v; }, [](const SimConfig& c) { return as_json(c.field); }}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      ZK_DOUBLE(alpha),
      ZK_DOUBLE(beta),
      ZK_INT(grid_size),
      ZK_INT(trunc_N),
      ZK_DOUBLE(dt),
      ZK_DOUBLE(T),
      ZK_STRING(scheme),
      Entry{"seed", [](SimConfig& c, const std::string& v) { c.seed = to_u64("seed", v); },
            [](const SimConfig& c) { return as_json(c.seed); }},
      Entry{"probe_modes",
            [](SimConfig& c, const std::string& v) {
              c.probe_modes.clear();
              for (const auto& s : split_list(v)) c.probe_modes.push_back(to_int("probe_modes", s));
            },
            [](const SimConfig& c) { return as_json(c.probe_modes); }},
      ZK_STRING(output),
      ZK_DOUBLE(c_step),
      ZK_DOUBLE(c_res),
      ZK_DOUBLE(fd_step),
      ZK_DOUBLE(data_norm),
      ZK_INT(data_band),
      ZK_STRING(data_profile),
      ZK_DOUBLE(data_decay),
      Entry{"ns",
            [](SimConfig& c, const std::string& v) {
              c.ns.clear();
              for (const auto& s : split_list(v)) c.ns.push_back(to_int("ns", s));
            },
            [](const SimConfig& c) { return as_json(c.ns); }},
      Entry{"dts",
            [](SimConfig& c, const std::string& v) {
              c.dts.clear();
              for (const auto& s : split_list(v)) c.dts.push_back(to_double("dts", s));
            },
            [](const SimConfig& c) { return as_json(c.dts); }},
      ZK_INT(samples),
      ZK_INT(pairs),
      ZK_DOUBLE(radius),
      Entry{"nonlinear", [](SimConfig& c, const std::string& v) { c.nonlinear = to_bool("nonlinear", v); },
            [](const SimConfig& c) { return as_json(c.nonlinear); }},
      ZK_DOUBLE(tol_mass),
      ZK_DOUBLE(tol_symplectic),
      ZK_INT(jobs),
      ZK_INT(picard_iterations),
      ZK_INT(picard_nodes),
      ZK_DOUBLE(picard_window),
      ZK_INT(sample_stride),
  };
  return table;
}

#undef ZK_DOUBLE
#undef ZK_INT
#undef ZK_STRING

const Entry* find_entry(const std::string& key) {
  for (const auto& e : entries())
    if (e.name == key) return &e;
  return nullptr;
}

// JSON value -> the text form accepted by the setters.
std::string json_to_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += json_to_text(v[i]);
    }
    return out;
  }
  throw ConfigError("unsupported JSON value in manifest config");
}

template <class T>
bool strictly_monotone(const std::vector<T>& xs) {
  if (xs.size() < 2) return true;
  const bool up = xs[1] > xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (up ? !(xs[i] > xs[i - 1]) : !(xs[i] < xs[i - 1])) return false;
  return true;
}

}  // namespace

SchemeSpec SimConfig::scheme_spec() const {
  SchemeSpec s;
  s.scheme = scheme == "picard_oracle" ? Scheme::picard_oracle : Scheme::strang_splitting;
  s.dt = dt;
  s.nonlinear = nonlinear;
  s.sample_stride = sample_stride;
  s.picard = {picard_iterations, picard_nodes, picard_window};
  return s;
}

void SimConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("invalid config: " + what); };
  try {
    constants().validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (grid_size < 1) fail("grid_size must be >= 1");
  if (trunc_N < 0 || trunc_N > grid_size) fail("trunc_N must satisfy 0 <= trunc_N <= grid_size");
  if (!(dt > 0.0)) fail("dt must be positive");
  if (T < 0.0) fail("T must be nonnegative");
  if (T > 0.0 && dt > T) fail("dt must not exceed T");
  if (scheme != "strang" && scheme != "picard_oracle") fail("scheme must be strang or picard_oracle");
  for (int k : probe_modes)
    if (k == 0 || std::abs(k) > grid_size) fail("probe_modes must be nonzero and within grid_size");
  if (!(c_step > 0.0)) fail("c_step must be positive");
  if (!(c_res >= 1.0)) fail("c_res must be >= 1");
  if (!(fd_step > 0.0)) fail("fd_step must be positive");
  if (data_norm < 0.0) fail("data_norm must be nonnegative");
  if (data_band < 0 || data_band > grid_size) fail("data_band must satisfy 0 <= data_band <= grid_size");
  if (data_profile != "gaussian" && data_profile != "power") fail("data_profile must be gaussian or power");
  if (ns.empty() || !strictly_monotone(ns)) fail("ns must be nonempty and strictly monotone");
  for (int n : ns)
    if (n < 0) fail("ns entries must be nonnegative");
  if (dts.empty() || !strictly_monotone(dts)) fail("dts must be nonempty and strictly monotone");
  for (double d : dts)
    if (!(d > 0.0)) fail("dts entries must be positive");
  if (samples < 1) fail("samples must be >= 1");
  if (pairs < 1) fail("pairs must be >= 1");
  if (!(radius > 0.0)) fail("radius must be positive");
  if (!(tol_mass > 0.0) || !(tol_symplectic > 0.0)) fail("tolerances must be positive");
  if (jobs < 1) fail("jobs must be >= 1");
  if (picard_iterations < 0) fail("picard_iterations must be >= 0");
  if (picard_nodes < 2) fail("picard_nodes must be >= 2");
  if (!(picard_window > 0.0) || picard_window > 1.0) fail("picard_window must lie in (0, 1]");
  if (sample_stride < 1) fail("sample_stride must be >= 1");
}

void set_config_value(SimConfig& cfg, const std::string& key, const std::string& value) {
  const Entry* e = find_entry(key);
  if (!e) throw ConfigError("unknown key '" + key + "'");
  e->set(cfg, value);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& e : entries()) out.push_back(e.name);
    return out;
  }();
  return keys;
}

SimConfig parse_config(const std::string& text, const std::string& source) {
  SimConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      set_config_value(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return cfg;
}

std::string format_config(const SimConfig& cfg) {
  std::string out;
  for (const auto& e : entries()) out += e.name + " = " + json_to_text(e.get(cfg)) + "\n";
  return out;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') return parse_config(text, path.string());

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": malformed manifest: " + e.what());
  }
  if (!doc.contains("config") || !doc["config"].is_object())
    throw ConfigError(path.string() + ": manifest has no config object");
  SimConfig cfg;
  for (const auto& [key, value] : doc["config"].items()) {
    try {
      set_config_value(cfg, key, json_to_text(value));
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  }
  return cfg;
}

std::filesystem::path save_manifest(const SimConfig& cfg, const std::string& study,
                                    const std::vector<std::string>& outputs, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json doc;
  doc["version"] = kVersionTag;
  doc["study"] = study;
  nlohmann::ordered_json conf;
  for (const auto& e : entries()) conf[e.name] = e.get(cfg);
  doc["config"] = std::move(conf);
  doc["outputs"] = outputs;
  const auto path = dir / "manifest.json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  return path;
}

}  // namespace zakharov
