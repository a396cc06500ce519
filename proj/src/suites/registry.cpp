#include <chrono>
#include <fstream>
#include <limits>
#include <sstream>

#include "common.hpp"
#include "hadamard/errors.hpp"

namespace hadamard::suites {

ExperimentConfig config_from_json(const io::Json& j) {
  if (!j.is_object()) throw UsageError("configuration must be a JSON object");
  ExperimentConfig c;
  try {
    c.suite = j.value("suite", "");
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
        throw UsageError("seed must be a nonnegative integer");
      }
      c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("params")) {
      if (!j.at("params").is_object()) throw UsageError("params must be an object");
      c.params = j.at("params");
    }
    c.tolerances = io::tolerances_from_json(j.value("tolerances", io::Json()));
    if (j.contains("output")) c.out_dir = j.at("output").value("dir", "");
  } catch (const io::Json::exception& e) {
    throw UsageError(std::string("malformed configuration: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read configuration " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  io::Json j;
  try {
    j = io::Json::parse(text.str());
  } catch (const io::Json::parse_error& e) {
    throw UsageError("configuration " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void SuiteResult::check_le(std::string name, double value, double limit, double tolerance) {
  checks_.push_back({std::move(name), value, limit, tolerance, true});
}

void SuiteResult::check_ge(std::string name, double value, double limit, double tolerance) {
  checks_.push_back({std::move(name), value, limit, tolerance, false});
}

void SuiteResult::check_true(std::string name, bool ok) { check_ge(std::move(name), ok ? 1.0 : 0.0, 1.0); }

io::CsvTable& SuiteResult::table(const std::string& name, std::vector<std::string> columns) {
  tables_.emplace_back(name, io::CsvTable(std::move(columns)));
  return tables_.back().second;
}

const Check* SuiteResult::find(const std::string& name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

io::Json to_json(const ReportSummary& s, const SuiteResult& r) {
  io::Json checks = io::Json::array();
  for (const auto& c : r.checks()) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"limit", c.limit},
                      {"relation", c.upper ? "<=" : ">="},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass()}});
  }
  return {{"suite", s.suite},
          {"cases", s.cases},
          {"max_violation", s.max_violation},
          {"pass", s.pass},
          {"failed_checks", s.failed_checks},
          {"wall_time_s", s.wall_time_s},
          {"warnings", r.warnings()},
          {"checks", std::move(checks)},
          {"note", "sampled maxima are lower bounds of true suprema; a failing check disproves the inequality, "
                   "passing checks only fail to disprove it"}};
}

const std::vector<SuiteInfo>& registry() {
  static const std::vector<SuiteInfo> suites = {
      {"cat0", "Remark \"semi parallelogram law\"; Prop \"is again a CAT(0) space\"; Defn \"all of whose tangent cones\"",
       "CN residuals, geodesics, SPD metric, bilipschitz sandwich, Schoenberg Gram witnesses", run_cat0},
      {"clifford", "Clifford relation; Remark \"even/odd functional calculus\"",
       "gamma relations up to m=12, vector squares, functional calculus vs eigendecomposition", run_clifford},
      {"bott-bound", "Prop \"base-point change\"; Lemma \"C_x0 - C_x1 bounded by d\"",
       "Clifford operator Lipschitz bound and the Omega/Theta base-point bound", run_bott_bound},
      {"equivariance", "Lemma \"phi_* o beta_x0 = beta_phi(x0)\"",
       "induced automorphisms against Bott evaluation at the moved base point", run_equivariance},
      {"rescaling", "Lemma \"Omega/Theta under rescaling\"; Lemma \"Omega_r, Theta_r -> 0\"",
       "closed-form rescaling identities and grid oracles", run_rescaling},
      {"deformation", "Prop \"homotopy of group homomorphisms connecting\"; Lemma \"asymptotically invariant\"",
       "H(phi,t) homomorphism law, length integral, asymptotic invariance bound", run_deformation},
      {"properness", "Lemma \"proper if and only if\"; Prop \"supported in a finite ball\"",
       "word-ball length profiles and support overlap", run_properness},
      {"diffeo-length", "Defn geometrically-discrete; length function lambda",
       "lambda_+ quadrature, discreteness verdicts, pushforward action", run_diffeo_length},
      {"continuum-approx", "Lemma \"simple functions are dense\"; Prop \"is again an admissible Hilbert-Hadamard space\"",
       "simple-function approximation, partition refinement, two-stage approximation", run_continuum_approx},
  };
  return suites;
}

const SuiteInfo& find_suite(const std::string& name) {
  for (const auto& s : registry()) {
    if (s.name == name) return s;
  }
  throw UsageError("unknown suite '" + name + "' (run 'list' for the available suites)");
}

std::string list_suites() {
  std::size_t width = 0;
  for (const auto& s : registry()) width = std::max(width, s.name.size());
  std::ostringstream out;
  for (const auto& s : registry()) {
    out << s.name << std::string(width + 2 - s.name.size(), ' ') << s.citation << "  (" << s.description << ")\n";
  }
  return out.str();
}

RunOutput run_suite(const ExperimentConfig& config) {
  const SuiteInfo& info = find_suite(config.suite);
  RunOutput out;
  const auto start = std::chrono::steady_clock::now();
  info.run(config, out.result);
  out.summary.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  out.summary.suite = info.name;
  out.summary.cases = out.result.cases();
  out.summary.max_violation = out.result.checks().empty() ? 0.0 : -std::numeric_limits<double>::infinity();
  for (const auto& c : out.result.checks()) {
    out.summary.max_violation = std::max(out.summary.max_violation, c.excess() - c.tolerance);
    if (!c.pass()) ++out.summary.failed_checks;
  }
  out.summary.pass = out.summary.failed_checks == 0;

  if (!config.out_dir.empty()) {
    const auto dir = config.out_dir / info.name;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    io::CsvTable checks({"check", "value", "relation", "limit", "tolerance", "pass"});
    for (const auto& c : out.result.checks()) {
      checks.row().add(c.name).add(c.value).add(c.upper ? "<=" : ">=").add(c.limit).add(c.tolerance).add(c.pass());
    }
    checks.write(dir / "checks.csv");
    for (const auto& [name, table] : out.result.tables()) table.write(dir / (name + ".csv"));
    std::ofstream summary(dir / "summary.json", std::ios::binary | std::ios::trunc);
    if (!summary) throw IoError("cannot write " + (dir / "summary.json").string());
    summary << to_json(out.summary, out.result).dump(2) << '\n';
    if (!summary) throw IoError("failed writing " + (dir / "summary.json").string());
  }
  return out;
}

}  // namespace hadamard::suites
