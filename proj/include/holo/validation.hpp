#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace holo::validation {

struct Options {
  std::uint64_t seed = 20240611;
  bool quick = false;  // fewer random cases; step counts stay the same
  // Name of one check whose computed quantity gets perturbed before it is
  // compared. Negative control for the harness itself.
  std::string inject_fault;
};

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double time_limit = 0;
  std::vector<std::string> metrics;   // "key=value"
  std::vector<std::string> failures;  // one line per violated bound
};

// Fault names accepted by Options::inject_fault, in check order.
const std::vector<std::string>& check_names();

Result polar_suite(const Options& o);
Result optimality_suite(const Options& o);
Result geodesic_consistency(const Options& o);
Result helix_phases(const Options& o);
Result frozen_regime(const Options& o);
Result exact_dynamics(const Options& o);
Result degeneracy_suite(const Options& o);
Result hyperplane_and_torus(const Options& o);

std::vector<Result> run_all(const Options& o);

// "PASS 3 geodesic time=... limit=... key=value ..." plus indented failure lines.
std::string format(const Result& r);

}  // namespace holo::validation
