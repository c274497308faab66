#include "gpesym/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <regex>
#include <set>
#include <sstream>

#include "gpesym/errors.hpp"

namespace gpesym {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  // from_chars rejects an explicit '+'.
  const std::size_t skip = (t.size() > 1 && t[0] == '+' && t[1] != '-') ? 1 : 0;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data() + skip, t.data() + t.size(), v);
  if (t.size() == skip || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw std::invalid_argument("invalid real '" + t + "'");
  }
  return v;
}

long parse_integer(const std::string& text) {
  const std::string t = trim(text);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw std::invalid_argument("invalid integer '" + t + "'");
  }
  return v;
}

template <class T, class F>
std::vector<T> parse_list(const std::string& text, F item) {
  std::vector<T> out;
  const std::string t = trim(text);
  if (t.empty()) return out;
  std::stringstream ss(t);
  std::string piece;
  while (std::getline(ss, piece, ',')) out.push_back(item(piece));
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"model.mu", [](RunConfig& c, const std::string& v) { c.model.mu = parse_real(v); }},
      {"model.rho", [](RunConfig& c, const std::string& v) { c.model.rho = parse_real(v); }},
      {"model.sigma", [](RunConfig& c, const std::string& v) { c.model.sigma = parse_real(v); }},
      {"model.a", [](RunConfig& c, const std::string& v) { c.model.a = parse_real(v); }},
      {"model.b", [](RunConfig& c, const std::string& v) { c.model.b = parse_real(v); }},
      {"model.c", [](RunConfig& c, const std::string& v) { c.model.c = parse_real(v); }},
      {"model.kappa", [](RunConfig& c, const std::string& v) { c.model.kappa = parse_real(v); }},
      {"model.hbar", [](RunConfig& c, const std::string& v) { c.model.hbar = parse_real(v); }},
      {"model.kappa_tilde", [](RunConfig& c, const std::string& v) { c.kappa_tilde = parse_real(v); }},
      {"grid.half_width", [](RunConfig& c, const std::string& v) { c.grid_half_width = parse_real(v); }},
      {"grid.points",
       [](RunConfig& c, const std::string& v) {
         const long n = parse_integer(v);
         if (n <= 0) throw std::invalid_argument("grid.points must be positive");
         c.grid_points = static_cast<std::size_t>(n);
       }},
      {"evolution.dt", [](RunConfig& c, const std::string& v) { c.evolution.dt = parse_real(v); }},
      {"evolution.t_final", [](RunConfig& c, const std::string& v) { c.evolution.t_final = parse_real(v); }},
      {"evolution.record_every",
       [](RunConfig& c, const std::string& v) { c.evolution.record_every = static_cast<int>(parse_integer(v)); }},
      {"task.workflow", [](RunConfig& c, const std::string& v) { c.workflow = trim(v); }},
      {"task.nu",
       [](RunConfig& c, const std::string& v) {
         c.nus = parse_list<int>(v, [](const std::string& s) { return static_cast<int>(parse_integer(s)); });
       }},
      {"task.alpha",
       [](RunConfig& c, const std::string& v) {
         c.alphas = parse_list<std::complex<double>>(v, [](const std::string& s) { return parse_complex(s); });
       }},
      {"task.times",
       [](RunConfig& c, const std::string& v) { c.times = parse_list<double>(v, parse_real); }},
      {"task.output_dir", [](RunConfig& c, const std::string& v) { c.output_dir = trim(v); }},
      {"sweep.param", [](RunConfig& c, const std::string& v) { c.sweep_param = trim(v); }},
      {"sweep.values",
       [](RunConfig& c, const std::string& v) { c.sweep_values = parse_list<double>(v, parse_real); }},
  };
  return table;
}

const Setter* find_setter(const std::string& key) {
  for (const auto& [k, s] : setters()) {
    if (k == key) return &s;
  }
  return nullptr;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, s] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

std::string env_name(const std::string& key) {
  std::string out = "GPESYM_";
  for (char ch : key) out += ch == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

std::complex<double> parse_complex(const std::string& text) {
  static const std::regex real_only(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*$)");
  static const std::regex imag_only(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i\s*$)");
  static const std::regex full(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, full)) return {parse_real(m[1]), parse_real(m[2])};
  if (std::regex_match(text, m, imag_only)) return {0.0, parse_real(m[1])};
  if (std::regex_match(text, m, real_only)) return {parse_real(m[1]), 0.0};
  throw std::invalid_argument("invalid complex '" + trim(text) + "' (expected re+imi)");
}

EffectiveParams RunConfig::effective() const {
  if (kappa_tilde) return effective_from_kappa_tilde(model, *kappa_tilde);
  return derive_effective(model, 1.0);
}

Grid RunConfig::grid_or(const Grid& designed) const {
  if (!grid_half_width && !grid_points) return designed;
  const double half = grid_half_width.value_or(-designed.x_min);
  const std::size_t n = grid_points.value_or(designed.n);
  return Grid::symmetric(half, n);
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::set<std::string> seen;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(ErrorCode::Config, where() + "expected key=value, got '" + body + "'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = body.substr(eq + 1);
    const Setter* setter = find_setter(key);
    if (setter == nullptr) fail(ErrorCode::Config, where() + "unknown key '" + key + "'");
    if (!seen.insert(key).second) fail(ErrorCode::Config, where() + "duplicate key '" + key + "'");
    try {
      (*setter)(cfg, value);
    } catch (const std::invalid_argument& e) {
      fail(ErrorCode::Config, where() + key + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::Config, path + ": cannot open config file");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

void apply_env_overrides(RunConfig& cfg) {
  for (const auto& [key, setter] : setters()) {
    const std::string name = env_name(key);
    const char* value = std::getenv(name.c_str());
    if (value == nullptr) continue;
    try {
      setter(cfg, value);
    } catch (const std::invalid_argument& e) {
      fail(ErrorCode::Config, "environment " + name + ": " + e.what());
    }
  }
}

void validate(const RunConfig& cfg) {
  static const std::set<std::string> workflows = {"exact", "evolve", "verify", "sweep"};
  if (!workflows.count(cfg.workflow)) {
    fail(ErrorCode::Config, "task.workflow must be one of exact, evolve, verify, sweep (got '" + cfg.workflow + "')");
  }
  if (cfg.nus.empty()) fail(ErrorCode::Config, "task.nu must list at least one index");
  for (int nu : cfg.nus) {
    if (nu < 0 || nu > 64) fail(ErrorCode::Config, "task.nu entries must be integers in [0, 64]");
  }
  if (cfg.alphas.empty()) fail(ErrorCode::Config, "task.alpha must list at least one value");
  if (cfg.times.empty()) fail(ErrorCode::Config, "task.times must list at least one value");
  if (!(cfg.evolution.dt > 0.0)) fail(ErrorCode::Config, "evolution.dt must be positive");
  if (!(cfg.evolution.t_final >= 0.0)) fail(ErrorCode::Config, "evolution.t_final must be non-negative");
  if (cfg.evolution.record_every < 1) fail(ErrorCode::Config, "evolution.record_every must be >= 1");
  if (!(cfg.model.hbar > 0.0)) fail(ErrorCode::Config, "model.hbar must be positive");
  if (!(cfg.model.mu > 0.0)) fail(ErrorCode::Config, "model.mu must be positive");
  if (cfg.grid_points && !is_power_of_two(*cfg.grid_points)) {
    fail(ErrorCode::Config, "grid.points must be a power of two");
  }
  if (cfg.grid_half_width && !(*cfg.grid_half_width > 0.0)) fail(ErrorCode::Config, "grid.half_width must be positive");
  if (cfg.workflow == "sweep") {
    static const std::set<std::string> params = {"mu", "rho", "sigma", "a", "b", "c", "kappa", "hbar"};
    if (!params.count(cfg.sweep_param)) {
      fail(ErrorCode::Config, "sweep.param must be one of mu, rho, sigma, a, b, c, kappa, hbar");
    }
    if (cfg.sweep_values.empty()) fail(ErrorCode::Config, "sweep.values must list at least one value");
  }
}

}  // namespace gpesym
