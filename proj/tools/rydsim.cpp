// rydsim: config-driven front end for the ladder simulators.
//
//   rydsim gs --config run.ini --out results/ --threads 4
//
// Exit codes: 0 ok, 2 configuration or dimension error, 3 numeric failure.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rydberg/config.hpp"
#include "rydberg/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rydberg ladder simulator and spin-1 effective models"};
  app.set_version_flag("--version", std::string(rydberg::kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides [output] directory)");
  app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for Lanczos start vectors");

  const char* tasks[][2] = {
      {"geom", "write atom positions"},
      {"coeffs", "effective spin-1 coefficients"},
      {"match", "map device parameters to target couplings or back"},
      {"gs", "ground state by Lanczos"},
      {"spectrum", "lowest eigenvalues by dense diagonalization"},
      {"evolve", "real-time evolution of a labelled initial state"},
      {"sweep", "ground-state scan along one parameter axis"},
      {"compare", "paired runs of two models"},
  };
  for (auto& t : tasks) app.add_subcommand(t[0], t[1]);

  CLI11_PARSE(app, argc, argv);

  try {
    rydberg::RunConfig config = rydberg::load_config(config_path);
    config.task = rydberg::parse_task_kind(app.get_subcommands().front()->get_name());
    if (out_dir) config.output_dir = *out_dir;
    if (threads) config.threads = *threads;
    if (seed) config.seed = *seed;
    rydberg::run(config, std::cout);
  } catch (const rydberg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const rydberg::DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << '\n';
    return 2;
  } catch (const rydberg::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    if (e.best_estimate) std::cerr << "best estimate: " << *e.best_estimate << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
