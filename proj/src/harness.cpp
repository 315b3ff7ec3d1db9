#include "fhlab/harness.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fhlab/io.hpp"
#include "fhlab/scenarios.hpp"

namespace fhlab::harness {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(trim(s.substr(pos)));
      break;
    }
    out.push_back(trim(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

double parse_double(const std::string& s, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("config: bad number '" + s + "' for key '" + key + "'");
  }
  return v;
}

// Expands "a:step:b" ranges; plain values pass through.
std::vector<double> expand_ranges(const std::string& raw,
                                  const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split(raw, ',')) {
    if (item.empty()) continue;
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_double(parts[0], key));
    } else if (parts.size() == 3) {
      const double a = parse_double(parts[0], key);
      const double step = parse_double(parts[1], key);
      const double b = parse_double(parts[2], key);
      if (!(step > 0.0)) {
        throw ConfigError("config: nonpositive step in '" + item + "'");
      }
      for (double x = a; x <= b + 1e-9 * step; x += step) out.push_back(x);
    } else {
      throw ConfigError("config: bad list item '" + item + "' for key '" +
                        key + "'");
    }
  }
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) +
                        " of '" + path + "' is not key=value");
    }
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw ConfigError("config: empty key");
  kv_[key] = value;
}

bool ExperimentConfig::has(const std::string& key) const {
  return kv_.count(key) != 0;
}

std::string ExperimentConfig::get_string(const std::string& key,
                                         const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double ExperimentConfig::get_double(const std::string& key,
                                    double fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : parse_double(it->second, key);
}

std::size_t ExperimentConfig::get_size(const std::string& key,
                                       std::size_t fallback) const {
  const double v = get_double(key, static_cast<double>(fallback));
  if (v < 0.0 || v != std::floor(v)) {
    throw ConfigError("config: key '" + key + "' must be a nonnegative int");
  }
  return static_cast<std::size_t>(v);
}

std::uint64_t ExperimentConfig::get_seed(const std::string& key,
                                         std::uint64_t fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::uint64_t v = 0;
  const auto& s = it->second;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ConfigError("config: bad seed '" + s + "'");
  }
  return v;
}

std::vector<std::size_t> ExperimentConfig::get_size_list(
    const std::string& key, const std::string& fallback) const {
  std::vector<std::size_t> out;
  for (double v : expand_ranges(get_string(key, fallback), key)) {
    if (v < 0.0 || v != std::floor(v)) {
      throw ConfigError("config: key '" + key + "' must list integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::vector<double> ExperimentConfig::get_double_list(
    const std::string& key, const std::string& fallback) const {
  return expand_ranges(get_string(key, fallback), key);
}

std::vector<std::string> ExperimentConfig::get_string_list(
    const std::string& key, const std::string& fallback) const {
  auto items = split(get_string(key, fallback), ',');
  std::vector<std::string> out;
  for (auto& s : items) {
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : scenario_registry()) names.push_back(name);
  return names;
}

ExperimentResult run_scenario(const ExperimentConfig& cfg,
                              const std::string& out_dir) {
  const std::string name = cfg.get_string("scenario", "");
  const auto& reg = scenario_registry();
  const auto it = reg.find(name);
  if (it == reg.end()) {
    std::string known;
    for (const auto& [n, fn] : reg) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("run_scenario: unknown scenario '" + name +
                      "' (known: " + known + ")");
  }

  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult res = it->second(cfg);
  const auto t1 = std::chrono::steady_clock::now();
  res.scenario = name;
  res.config_echo = cfg.entries();
  res.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

  std::filesystem::create_directories(out_dir);
  auto artifact = [&](const std::string& base) {
    return (std::filesystem::path(out_dir) / base).string();
  };

  for (const auto& table : res.tables) {
    std::string csv = io::csv_line(table.header);
    for (const auto& row : table.rows) csv += io::csv_line(row);
    const std::string path = artifact(name + "_" + table.name + ".csv");
    io::write_text(path, csv);
    res.artifacts.push_back(path);
  }

  nlohmann::json j;
  j["schema"] = "fh-lab/1";
  j["scenario"] = name;
  j["config"] = res.config_echo;
  j["verdicts"] = res.verdicts;
  nlohmann::json jtables;
  for (const auto& table : res.tables) {
    nlohmann::json jt;
    jt["header"] = table.header;
    jt["rows"] = table.rows;
    jtables[table.name] = std::move(jt);
  }
  j["tables"] = std::move(jtables);
  const std::string jpath = artifact(name + "_result.json");
  io::write_text(jpath, j.dump(2) + "\n");
  res.artifacts.push_back(jpath);

  std::string summary = "scenario: " + name + "\n";
  for (const auto& [k, v] : res.config_echo) {
    summary += "config " + k + " = " + v + "\n";
  }
  for (const auto& [k, v] : res.verdicts) {
    summary += "verdict " + k + ": " + v + "\n";
  }
  summary += "tables: " + std::to_string(res.tables.size()) + "\n";
  summary += "wall_seconds: " + io::fmt(res.wall_seconds) + "\n";
  const std::string spath = artifact(name + "_summary.txt");
  io::write_text(spath, summary);
  res.artifacts.push_back(spath);

  return res;
}

}  // namespace fhlab::harness
