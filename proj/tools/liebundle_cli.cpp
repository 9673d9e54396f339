#include <cstdint>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "liebundle/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"deformed skew-symmetric Lie bundle toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;

  const auto add_common = [&](CLI::App* cmd, bool with_out) {
    cmd->add_option("--config", config_path, "JSON configuration file")->required();
    if (with_out) cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed, "override the config seed")->each([&](const std::string&) { seed_given = true; });
    cmd->add_option("--threads", threads, "worker threads (0 = library default)");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the property suites");
  add_common(verify, true);
  CLI::App* classify = app.add_subcommand("classify", "signature or semidirect decomposition");
  add_common(classify, false);
  CLI::App* simulate = app.add_subcommand("simulate", "integrate a Hamiltonian flow");
  add_common(simulate, true);

  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    liebundle::RunConfig config = liebundle::load_config(config_path);
    if (seed_given) {
      config.seed = seed;
      config.echo["seed"] = seed;
    }
    if (verify->parsed()) return liebundle::cmd_verify(config, out_dir, std::cout);
    if (classify->parsed()) return liebundle::cmd_classify(config, std::cout);
    return liebundle::cmd_simulate(config, out_dir, std::cout);
  } catch (const liebundle::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return liebundle::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return liebundle::kExitPropertyFailure;
  }
}
