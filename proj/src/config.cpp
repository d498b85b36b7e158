#include <windsoup/config.hpp>

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace windsoup::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v) {
  std::size_t used = 0;
  const double x = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument("trailing characters");
  return x;
}

int parse_int(const std::string& v) {
  std::size_t used = 0;
  const long x = std::stol(v, &used);
  if (used != v.size()) throw std::invalid_argument("trailing characters");
  if (x < -(1L << 30) || x > (1L << 30)) throw std::invalid_argument("out of range");
  return static_cast<int>(x);
}

uint64_t parse_u64(const std::string& v) {
  std::size_t used = 0;
  const unsigned long long x = std::stoull(v, &used);
  if (used != v.size()) throw std::invalid_argument("trailing characters");
  return static_cast<uint64_t>(x);
}

std::vector<double> parse_double_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument("empty list element");
    out.push_back(parse_double(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::unordered_map<std::string, Setter>& setters() {
  static const std::unordered_map<std::string, Setter> map = {
      {"alpha", [](RunConfig& c, const std::string& v) { c.alpha = parse_double(v); }},
      {"radius", [](RunConfig& c, const std::string& v) { c.radius = parse_double(v); }},
      {"t_min", [](RunConfig& c, const std::string& v) { c.t_min = parse_double(v); }},
      {"t_max", [](RunConfig& c, const std::string& v) { c.t_max = parse_double(v); }},
      {"steps_per_unit_time",
       [](RunConfig& c, const std::string& v) { c.steps_per_unit_time = parse_int(v); }},
      {"seed", [](RunConfig& c, const std::string& v) { c.seed = parse_u64(v); }},
      {"replicas", [](RunConfig& c, const std::string& v) { c.replicas = parse_u64(v); }},
      {"workers", [](RunConfig& c, const std::string& v) { c.workers = parse_int(v); }},
      {"delta", [](RunConfig& c, const std::string& v) { c.delta = parse_double(v); }},
      {"k_max", [](RunConfig& c, const std::string& v) { c.k_max = parse_int(v); }},
      {"beta", [](RunConfig& c, const std::string& v) { c.beta = parse_double(v); }},
      {"beta_field", [](RunConfig& c, const std::string& v) { c.beta_field = v; }},
      {"beta_inner", [](RunConfig& c, const std::string& v) { c.beta_inner = parse_double(v); }},
      {"beta_outer", [](RunConfig& c, const std::string& v) { c.beta_outer = parse_double(v); }},
      {"beta_step_radius",
       [](RunConfig& c, const std::string& v) { c.beta_step_radius = parse_double(v); }},
      {"deltas", [](RunConfig& c, const std::string& v) { c.deltas = parse_double_list(v); }},
      {"schedule_levels",
       [](RunConfig& c, const std::string& v) { c.schedule_levels = parse_int(v); }},
      {"schedule_first",
       [](RunConfig& c, const std::string& v) { c.schedule_first = parse_double(v); }},
      {"schedule_ratio",
       [](RunConfig& c, const std::string& v) { c.schedule_ratio = parse_double(v); }},
      {"h_preset", [](RunConfig& c, const std::string& v) { c.h_preset = v; }},
      {"h_radius", [](RunConfig& c, const std::string& v) { c.h_radius = parse_double(v); }},
      {"grid_n", [](RunConfig& c, const std::string& v) { c.grid_n = parse_int(v); }},
      {"margin", [](RunConfig& c, const std::string& v) { c.margin = parse_double(v); }},
      {"epsilon", [](RunConfig& c, const std::string& v) { c.epsilon = parse_double(v); }},
      {"target_resolution",
       [](RunConfig& c, const std::string& v) { c.target_resolution = parse_double(v); }},
      {"n_bridges", [](RunConfig& c, const std::string& v) { c.n_bridges = parse_u64(v); }},
      {"bridge_steps", [](RunConfig& c, const std::string& v) { c.bridge_steps = parse_int(v); }},
      {"root_radius", [](RunConfig& c, const std::string& v) { c.root_radius = parse_double(v); }},
      {"out_dir", [](RunConfig& c, const std::string& v) { c.out_dir = v; }},
  };
  return map;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  std::stringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key=value, got '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    try {
      it->second(config, value);
    } catch (const std::exception& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": bad value for '" +
                                  key + "': " + e.what());
    }
  }
  return config;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace windsoup::cli
