// holo-cli: figure datasets for the three-level model and the validation run.
//
//   holo-cli phases-helix [--analytic] [--r 3 --s 2 --omega-theta 6.28 ...]
//   holo-cli geodesic [--theta-start ... --phi-end ...]
//   holo-cli exact [--omega-theta 0.1 --omega-phi -0.1 ...]
//   holo-cli validate [--quick] [--seed N]

#include <iostream>

#include "CLI11.hpp"
#include "holo/commands.hpp"

namespace {

template <class T>
void optional_flag(CLI::App& app, const std::string& name, std::optional<T>& target,
                   const std::string& help) {
  app.add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  using holo::cli::RunConfig;
  RunConfig cfg;

  CLI::App app{"Grassmann holonomies and the three-level model"};
  app.require_subcommand(1);
  app.fallthrough();

  optional_flag(app, "--r", cfg.r, "torus parameter r");
  optional_flag(app, "--s", cfg.s, "torus parameter s");
  optional_flag(app, "--omega-theta", cfg.omega_theta, "angular speed along theta");
  optional_flag(app, "--omega-phi", cfg.omega_phi, "angular speed along phi");
  optional_flag(app, "--t-max", cfg.t_max, "end time of the grid");
  optional_flag(app, "--samples", cfg.samples, "rows in the output");
  optional_flag(app, "--steps", cfg.steps, "transport steps in total");
  app.add_option("--tol", cfg.tol, "tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed of the randomized suites");
  app.add_option("--out", cfg.out, "output file, - for stdout");
  app.add_flag("--analytic", cfg.analytic, "add the closed-form phase columns");
  app.add_flag("--quick", cfg.quick, "fewer random cases in validate");
  optional_flag(app, "--theta-start", cfg.theta_start, "geodesic start angle theta");
  optional_flag(app, "--phi-start", cfg.phi_start, "geodesic start angle phi");
  optional_flag(app, "--theta-end", cfg.theta_end, "geodesic end angle theta");
  optional_flag(app, "--phi-end", cfg.phi_end, "geodesic end angle phi");
  app.add_option("--inject-fault", cfg.inject_fault)->group("");

  for (const char* name : {"phases-helix", "geodesic", "exact", "validate"})
    app.add_subcommand(name)->callback([&cfg, name] { cfg.subcommand = name; });
  app.get_subcommand("phases-helix")->description("non-cyclic holonomy phases along a toroidal helix");
  app.get_subcommand("geodesic")->description("parameter-space curve of the shortest ground-plane geodesic");
  app.get_subcommand("exact")->description("exact dynamics against the adiabatic prediction");
  app.get_subcommand("validate")->description("run the property suites, PASS/FAIL per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return holo::cli::kBadArgs;
  }

  if (cfg.subcommand == "phases-helix") return holo::cli::cmd_phases_helix(cfg, std::cerr);
  if (cfg.subcommand == "geodesic") return holo::cli::cmd_geodesic(cfg, std::cerr);
  if (cfg.subcommand == "exact") return holo::cli::cmd_exact(cfg, std::cerr);
  return holo::cli::cmd_validate(cfg, std::cout, std::cerr);
}
