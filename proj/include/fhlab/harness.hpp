#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fhlab/types.hpp"

namespace fhlab::harness {

// Flat key=value experiment configuration. Files hold one pair per line,
// '#' starts a comment; later assignments win.
class ExperimentConfig {
 public:
  static ExperimentConfig from_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
  // Comma separated values, each either a number or a range "a:step:b"
  // (inclusive).
  std::vector<std::size_t> get_size_list(const std::string& key,
                                         const std::string& fallback) const;
  std::vector<double> get_double_list(const std::string& key,
                                      const std::string& fallback) const;
  std::vector<std::string> get_string_list(const std::string& key,
                                           const std::string& fallback) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct ExperimentResult {
  std::string scenario;
  std::map<std::string, std::string> config_echo;
  std::vector<Table> tables;
  std::map<std::string, std::string> verdicts;
  // Wall clock is reported in the summary only; the CSV and JSON artifacts
  // must be byte-identical across reruns.
  double wall_seconds = 0.0;
  std::vector<std::string> artifacts;
};

std::vector<std::string> scenario_names();

// Runs the scenario named by cfg["scenario"] and writes its artifacts
// (<scenario>_<table>.csv per table, <scenario>_result.json,
// <scenario>_summary.txt) into out_dir.
ExperimentResult run_scenario(const ExperimentConfig& cfg,
                              const std::string& out_dir);

}  // namespace fhlab::harness
