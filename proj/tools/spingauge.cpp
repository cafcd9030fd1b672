// Command-line front end: verify, run and sweep.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spingauge/config.hpp"
#include "spingauge/errors.hpp"
#include "spingauge/outputs.hpp"
#include "spingauge/scenario.hpp"
#include "spingauge/verify.hpp"

namespace sg = spingauge;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string exit_code_table() {
  std::ostringstream os;
  os << "Exit codes:\n"
     << "  0   success, every check passed\n"
     << "  " << kExitCheckFailed << "   a verify check or a run check failed\n"
     << "  " << kExitUsage << "   command-line usage error\n";
  for (int k = static_cast<int>(sg::ErrorKind::NonHermitianInput); k <= static_cast<int>(sg::ErrorKind::IoError); ++k) {
    const auto kind = static_cast<sg::ErrorKind>(k);
    os << "  " << sg::exit_code(kind) << "  " << sg::to_string(kind) << '\n';
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sg::Error(sg::ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_report(const sg::RunReport& rep) {
  std::cout << sg::format_check_lines(rep);
  for (const auto& note : rep.notes) std::cout << "note: " << note << '\n';
  std::printf("%zu pass, %zu fail, %zu info  (%.2f s)\n", rep.count(sg::CheckStatus::Pass),
              rep.count(sg::CheckStatus::Fail), rep.count(sg::CheckStatus::Info), rep.seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin gauge field toolkit: SU(2) gauge fields from spin-orbit coupling, classical forces, "
               "and spinor wavepacket dynamics."};
  app.set_version_flag("--version", std::string(sg::kVersion));
  app.footer(exit_code_table());
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "Run the identity suite and print one line per check");
  std::uint64_t seed = 0;
  int cases = 100;
  bool reverse = false;
  std::string verify_json;
  verify->add_option("--seed", seed, "Seed for the random batches")->capture_default_str();
  verify->add_option("--cases", cases, "Random cases per batch")->check(CLI::Range(1, 1000000))->capture_default_str();
  verify->add_flag("--reverse-cross-order", reverse,
                   "Diagnostic: evaluate A x A with reversed operand order (the suite must then fail)");
  verify->add_option("--json", verify_json, "Also write the report as JSON to this path");

  auto* run = app.add_subcommand("run", "Run one scenario from a config file");
  std::string config_path;
  std::string out_dir = "out";
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Run a scenario once per value of one config key");
  std::string sweep_config;
  std::string param;
  std::vector<std::string> values;
  std::string sweep_out = "out";
  unsigned jobs = 0;
  sweep->add_option("config", sweep_config, "Base config file")->required();
  sweep->add_option("--param", param, "Key to vary, as section.key")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
  sweep->add_option("--out", sweep_out, "Output directory")->capture_default_str();
  sweep->add_option("--jobs", jobs, "Concurrent runs (0 = hardware threads)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) {
      sg::VerifyOptions opts;
      opts.seed = seed;
      opts.n_random = cases;
      opts.cross_order = reverse ? sg::CrossOrder::RightFirst : sg::CrossOrder::LeftFirst;
      const auto start = std::chrono::steady_clock::now();
      sg::RunReport rep = sg::run_verify(opts);
      rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      print_report(rep);
      if (!verify_json.empty()) sg::write_text_file(verify_json, sg::format_summary_json(rep));
      return rep.passed() ? 0 : kExitCheckFailed;
    }
    if (*run) {
      const sg::Scenario s = sg::parse_config(read_file(config_path));
      const sg::ScenarioResult res = sg::run_scenario(s, out_dir);
      std::cout << "mode " << sg::to_string(s.mode) << ", digest " << res.report.digest << '\n';
      print_report(res.report);
      for (const auto& f : res.files) std::cout << "wrote " << f.string() << '\n';
      return res.report.passed() ? 0 : kExitCheckFailed;
    }
    if (*sweep) {
      const sg::ConfigDocument doc = sg::parse_document(read_file(sweep_config));
      const auto points = sg::run_sweep(doc, param, values, sweep_out, jobs);
      int code = 0;
      for (const auto& p : points) {
        if (!p.error.empty()) {
          std::cout << param << '=' << p.value << ": error: " << p.error << '\n';
          if (code == 0 || code == kExitCheckFailed) code = p.exit_code;
        } else {
          std::cout << param << '=' << p.value << ": " << (p.report.passed() ? "pass" : "FAIL") << "  -> "
                    << p.dir.string() << '\n';
          if (!p.report.passed() && code == 0) code = kExitCheckFailed;
        }
      }
      std::cout << "wrote " << (std::filesystem::path(sweep_out) / "sweep_summary.json").string() << '\n';
      return code;
    }
  } catch (const sg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sg::exit_code(e.kind());
  }
  return kExitUsage;
}
