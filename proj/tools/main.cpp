#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace polybarrier::cli;
  CLI::App app{"Polynomial approximation barriers for l1-constrained shallow networks"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--config", opts.config_path, "Configuration file ([section] key = value)");
  app.add_option("--seed", opts.seed, "Random seed (echoed into every CSV)")->capture_default_str();
  app.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
  app.add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "csv+svg"}))
      ->capture_default_str();
  app.add_option("--set", opts.overrides, "Override a config entry: section.key=value");
  app.add_flag("--break-constant", opts.break_constant,
               "Negative control: zero the residual constant (barrier, multid-barrier)");

  const std::map<std::string, std::string> help = {
      {"remez", "Best polynomial approximation errors E_m(f) and fitted decay rate"},
      {"ellipse-norm", "Sup of the activation on dilated Bernstein ellipses"},
      {"fit", "Fit l1-constrained networks along a schedule"},
      {"barrier", "Barrier report: E_m(f), fitted network error and residual per row"},
      {"regime", "Classify a (B_m, L_m) schedule as vanishing or non-vanishing"},
      {"barron-check", "High-frequency remainder bound on random or stored networks"},
      {"multid-barrier", "Barrier report in dimension 2 or 3"},
  };
  for (const auto& name : command_names()) app.add_subcommand(name, help.at(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }
  return run_command(app.get_subcommands().front()->get_name(), opts, std::cout, std::cerr);
}
