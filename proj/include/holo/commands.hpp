#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "holo/csv.hpp"

namespace holo::cli {

enum Exit : int { kOk = 0, kBadArgs = 2, kNumerical = 3, kValidation = 4 };

// Unset numeric fields fall back to the defaults of each subcommand.
struct RunConfig {
  std::string subcommand;
  std::optional<double> r, s, omega_theta, omega_phi, t_max;
  std::optional<long> samples, steps;
  double tol = 1e-9;
  std::uint64_t seed = 20240611;
  std::string out = "-";
  bool analytic = false;
  bool quick = false;
  // geodesic endpoints
  std::optional<double> theta_start, phi_start, theta_end, phi_end;
  std::string inject_fault;
};

// Thrown for argument combinations the flag parser cannot catch.
struct BadArguments : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Each builds the table without writing it.
csv::Table phases_helix_table(const RunConfig& cfg);
csv::Table geodesic_table(const RunConfig& cfg);
csv::Table exact_table(const RunConfig& cfg);

// Build, write to cfg.out, map errors to exit codes; messages go to `err`.
int cmd_phases_helix(const RunConfig& cfg, std::ostream& err);
int cmd_geodesic(const RunConfig& cfg, std::ostream& err);
int cmd_exact(const RunConfig& cfg, std::ostream& err);
// PASS/FAIL lines to `out`; kValidation when anything fails.
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace holo::cli
