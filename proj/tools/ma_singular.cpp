// ma-singular: construct, round-trip, verify and plot isolated singularities
// of elliptic Monge-Ampere equations from a JSON run configuration.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "masing/app.hpp"
#include "masing/error.hpp"

namespace app = masing::app;

int main(int argc, char** argv) {
  CLI::App cli{"Monge-Ampere isolated singularities: construct, roundtrip, verify, plot"};
  cli.set_version_flag("--version", "ma-singular 1.0.0");

  std::string command;
  std::string config_file;
  std::string out_dir;
  std::vector<std::string> overrides;
  bool print_config = false;

  cli.add_option("command", command, "construct | roundtrip | verify | plot")
      ->check(CLI::IsMember(app::commands()));
  cli.add_option("--config,-c", config_file, "JSON run configuration")->check(CLI::ExistingFile);
  cli.add_option("--out,-o", out_dir, "output directory (overrides output.dir)");
  cli.add_option("--set", overrides, "override a dotted config key, e.g. march.R=0.05")
      ->allow_extra_args(false);
  cli.add_flag("--print-config", print_config, "print the effective configuration and exit");
  cli.footer(
      "Exit codes: 0 ok, 1 internal error, 2 usage/config/missing input, 3 multivalued,\n"
      "4 instability abort, 5 ellipticity violation, 6 box exit, 7 roundtrip precondition,\n"
      "8 verification or round-trip mismatch, 9 non-finite state, 10 no graph (J <= 0).");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : app::kUsage;
  }

  try {
    if (!out_dir.empty()) overrides.push_back("output.dir=\"" + out_dir + "\"");
    const auto effective = app::effective_config(config_file, overrides);
    if (print_config) {
      std::cout << effective.dump(2) << "\n";
      return app::kOk;
    }
    if (command.empty()) {
      std::cerr << "ma-singular: a command is required\n" << cli.help();
      return app::kUsage;
    }
    const auto cfg = app::resolve_config(command, effective);
    return app::run(cfg, std::cout);
  } catch (const masing::Error& e) {
    std::cerr << "ma-singular: " << e.what() << "\n";
    return app::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "ma-singular: internal error: " << e.what() << "\n";
    return app::kInternal;
  }
}
