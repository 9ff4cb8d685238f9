// Command-line front end: simulate, analyze, verify.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "oldroyd/harness/commands.hpp"
#include "verify/suites.hpp"

int main(int argc, char** argv) {
  using namespace oldroyd;
  CLI::App app{"Pseudo-spectral diffusive Oldroyd-B simulator and decay analysis"};
  app.require_subcommand(1);

  harness::SimulateOptions sim;
  std::string sim_config, sim_resume;
  auto* simulate = app.add_subcommand("simulate", "run a configuration and write diagnostics");
  simulate->add_option("--config", sim_config, "JSON config (omit for the reference run)");
  simulate->add_option("--output", sim.output, "output directory")->required();
  simulate->add_flag("--override-horizon", sim.override_horizon,
                     "allow a horizon beyond the trusted box time");
  simulate->add_option("--resume", sim_resume, "checkpoint to continue from");

  harness::AnalyzeOptions ana;
  std::string window, ana_config, ana_output;
  auto* analyze = app.add_subcommand("analyze", "fit decay laws and write a verdict");
  analyze->add_option("--input", ana.input, "diagnostics CSV")->required()->check(
      CLI::ExistingFile);
  analyze->add_option("--window", window, "fit window t1:t2");
  analyze->add_option("--config", ana_config, "refuse a CSV whose config hash differs");
  analyze->add_option("--output", ana_output, "verdict path (default: verdict.json beside CSV)");

  std::string level = "quick", fault;
  auto* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--inject-fault", fault, "deliberately broken component (testing only)")
      ->check(CLI::IsMember({"", "projector-normalization"}));

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    if (!sim_config.empty()) sim.config = sim_config;
    if (!sim_resume.empty()) sim.resume = sim_resume;
    return harness::cmd_simulate(sim, std::cerr);
  }
  if (analyze->parsed()) {
    try {
      if (!window.empty()) ana.window = harness::parse_window(window);
    } catch (const std::exception& e) {
      std::cerr << "analyze: " << e.what() << '\n';
      return harness::kExitFailure;
    }
    if (!ana_config.empty()) ana.config = ana_config;
    if (!ana_output.empty()) ana.output = ana_output;
    return harness::cmd_analyze(ana, std::cout, std::cerr);
  }
  verify::SuiteOptions vo;
  vo.level = level == "full" ? verify::Level::kFull : verify::Level::kQuick;
  if (fault == "projector-normalization") vo.fault = verify::Fault::kProjectorNormalization;
  return verify::cmd_verify(vo, std::cout);
}
