#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "hadamard/csv.hpp"
#include "hadamard/rng.hpp"
#include "hadamard/serialize.hpp"
#include "hadamard/tolerances.hpp"

namespace hadamard::suites {

struct ExperimentConfig {
  std::string suite;
  std::uint64_t seed = 42;
  io::Json params = io::Json::object();  // suite-specific sample counts and models
  Tolerances tolerances = default_tolerances();
  std::filesystem::path out_dir;  // empty: decided by the caller

  CounterRng rng(std::string_view stream, std::uint64_t index) const {
    return CounterRng::stream(seed, stream, index);
  }
};

// {"suite": ..., "seed": ..., "params": {...}, "tolerances": {...},
//  "output": {"dir": ...}}. Throws UsageError on malformed input.
ExperimentConfig config_from_json(const io::Json& j);
// Throws IoError when the file cannot be read, UsageError when it does not parse.
ExperimentConfig load_config(const std::filesystem::path& path);

// One inequality: value <= limit (upper) or value >= limit (lower), with an
// absolute slack.
struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  double tolerance = 0.0;
  bool upper = true;

  double excess() const { return upper ? value - limit : limit - value; }
  bool pass() const { return excess() <= tolerance; }
};

class SuiteResult {
 public:
  void check_le(std::string name, double value, double limit, double tolerance = 0.0);
  void check_ge(std::string name, double value, double limit, double tolerance = 0.0);
  void check_true(std::string name, bool ok);
  void add_cases(std::size_t n) { cases_ += n; }
  io::CsvTable& table(const std::string& name, std::vector<std::string> columns);
  void warn(std::string message) { warnings_.push_back(std::move(message)); }

  const std::vector<Check>& checks() const { return checks_; }
  const std::vector<std::pair<std::string, io::CsvTable>>& tables() const { return tables_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::size_t cases() const { return cases_; }
  const Check* find(const std::string& name) const;

 private:
  std::vector<Check> checks_;
  std::vector<std::pair<std::string, io::CsvTable>> tables_;
  std::vector<std::string> warnings_;
  std::size_t cases_ = 0;
};

struct ReportSummary {
  std::string suite;
  std::size_t cases = 0;
  double max_violation = 0.0;  // max over checks of (excess - tolerance)
  bool pass = true;            // max_violation <= 0
  double wall_time_s = 0.0;
  std::size_t failed_checks = 0;
};

io::Json to_json(const ReportSummary& s, const SuiteResult& r);

struct SuiteInfo {
  std::string name;
  std::string citation;
  std::string description;
  std::function<void(const ExperimentConfig&, SuiteResult&)> run;
};

const std::vector<SuiteInfo>& registry();
// Throws UsageError for unknown names.
const SuiteInfo& find_suite(const std::string& name);
std::string list_suites();

struct RunOutput {
  ReportSummary summary;
  SuiteResult result;
};

// Runs the suite; when `out_dir` is set, writes <out>/<suite>/<table>.csv,
// checks.csv and summary.json (the only file carrying wall time).
RunOutput run_suite(const ExperimentConfig& config);

}  // namespace hadamard::suites
