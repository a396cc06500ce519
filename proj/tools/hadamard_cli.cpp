#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/suites.hpp"

namespace {

enum Exit : int { kPass = 0, kViolation = 1, kUsage = 2, kIo = 3, kInternal = 4 };

// --out beats HADAMARD_OUT_DIR, which beats the config's output.dir.
std::filesystem::path output_dir(const std::string& flag, const std::filesystem::path& from_config) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("HADAMARD_OUT_DIR"); env != nullptr && *env != '\0') return env;
  if (!from_config.empty()) return from_config;
  return "hadamard-out";
}

int run(const std::string& config_path, const std::string& suite, std::optional<std::uint64_t> seed,
        const std::string& out) {
  using namespace hadamard::suites;
  ExperimentConfig config = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
  if (!suite.empty()) config.suite = suite;
  if (seed) config.seed = *seed;
  if (config.suite.empty()) throw hadamard::UsageError("no suite named in the configuration or on the command line");
  config.out_dir = output_dir(out, config.out_dir);

  const RunOutput result = run_suite(config);
  const auto& s = result.summary;
  for (const auto& w : result.result.warnings()) std::cerr << "warning: " << w << '\n';
  for (const auto& c : result.result.checks()) {
    if (!c.pass()) {
      std::cerr << "violation: " << c.name << " = " << c.value << (c.upper ? " > " : " < ") << c.limit
                << " (tolerance " << c.tolerance << ")\n";
    }
  }
  std::cout << s.suite << ": " << (s.pass ? "pass" : "FAIL") << ", " << s.cases << " cases, max violation "
            << s.max_violation << ", " << s.failed_checks << " failed checks, " << s.wall_time_s << " s -> "
            << (config.out_dir / s.suite).string() << '\n';
  return s.pass ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hadamard-space verification suites"};
  app.require_subcommand(1);

  std::string config_path;
  std::string suite;
  std::optional<std::uint64_t> seed;
  std::string out;
  CLI::App* run_cmd = app.add_subcommand("run", "run one verification suite");
  run_cmd->add_option("--config", config_path, "JSON experiment configuration");
  run_cmd->add_option("--suite", suite, "suite name (overrides the configuration)");
  run_cmd->add_option("--seed", seed, "64-bit seed (overrides the configuration)");
  run_cmd->add_option("--out", out, "output directory (overrides HADAMARD_OUT_DIR and the configuration)");
  CLI::App* list_cmd = app.add_subcommand("list", "list suites and the results they check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (list_cmd->parsed()) {
      std::cout << hadamard::suites::list_suites();
      return kPass;
    }
    return run(config_path, suite, seed, out);
  } catch (const hadamard::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const hadamard::DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const hadamard::ResourceError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const hadamard::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
