// Command-line front end: runs one experiment subcommand from a key=value
// config file and writes manifest + CSV results (+ verdict summary) to the
// output directory.  Exit code 0: all verdicts PASS, 1: some FAIL, 2: error.

#include <CLI11.hpp>

#include <iostream>

#include "nlskdv/config.hpp"
#include "nlskdv/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for a coupled Schrodinger-KdV system"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;

  for (const char* name : {"simulate", "scaling", "lemmas", "multipliers", "picard", "norms"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key=value config file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--seed", seed, "random seed (overrides config)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string requested = app.get_subcommands().front()->get_name();
    auto raw = nlskdv::load_config_raw(config_path);
    auto sub_key = raw.find("subcommand");
    if (sub_key == raw.end()) {
      raw.emplace("subcommand", requested);
    } else if (sub_key->second != requested) {
      std::cerr << "error: config file is for subcommand '" << sub_key->second << "', not '"
                << requested << "'\n";
      return 2;
    }
    nlskdv::RunConfig config = nlskdv::resolve_config(raw);
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);

    nlskdv::RunOutcome outcome = nlskdv::run(config);
    for (const auto& line : outcome.messages) std::cout << line << "\n";
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
