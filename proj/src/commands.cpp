#include "holo/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "holo/threestate.hpp"
#include "holo/validation.hpp"

namespace holo::cli {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string kv(const char* key, double v) { return std::string(key) + "=" + csv::format_number(v); }

double positive(const std::optional<double>& v, double fallback, const char* name) {
  const double x = v.value_or(fallback);
  if (!(x > 0) || !std::isfinite(x)) throw BadArguments(std::string("--") + name + " must be positive");
  return x;
}

double finite(const std::optional<double>& v, double fallback, const char* name) {
  const double x = v.value_or(fallback);
  if (!std::isfinite(x)) throw BadArguments(std::string("--") + name + " must be finite");
  return x;
}

// samples = 1 is a legal degenerate grid (header only); below that is an error.
long sample_count(const RunConfig& cfg) {
  const long n = cfg.samples.value_or(200);
  if (n < 1) throw BadArguments("--samples must be at least 1");
  return n;
}

long step_count(const RunConfig& cfg, long fallback) {
  const long n = cfg.steps.value_or(fallback);
  if (n < 2) throw BadArguments("--steps must be at least 2");
  return n;
}

double tgrid(double t_max, long k, long samples) {
  return t_max * static_cast<double>(k) / static_cast<double>(samples - 1);
}

void push_phases(std::vector<double>& row, const std::vector<double>& phases) {
  row.push_back(phases.size() == 2 ? phases[0] : nan);
  row.push_back(phases.size() == 2 ? phases[1] : nan);
}

template <class Build>
int run(const RunConfig& cfg, std::ostream& err, Build build) {
  try {
    const csv::Table t = build(cfg);
    try {
      csv::write(t, cfg.out);
    } catch (const std::runtime_error& e) {
      err << "error: " << e.what() << "\n";
      return kBadArgs;
    }
    return kOk;
  } catch (const BadArguments& e) {
    err << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const UnsupportedBranch& e) {
    err << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace

csv::Table phases_helix_table(const RunConfig& cfg) {
  three::HelixSpec h;
  h.r = positive(cfg.r, 3.0, "r");
  h.s = positive(cfg.s, 2.0, "s");
  h.omega_theta = finite(cfg.omega_theta, 2 * pi, "omega-theta");
  h.omega_phi = finite(cfg.omega_phi, -2 * h.omega_theta, "omega-phi");
  const double t_max = positive(cfg.t_max, 1.0, "t-max");
  const long samples = sample_count(cfg);
  const long steps = step_count(cfg, 100000);

  csv::Table t;
  t.comments.push_back("phases-helix " + kv("r", h.r) + " " + kv("s", h.s) + " " +
                       kv("omega_theta", h.omega_theta) + " " + kv("omega_phi", h.omega_phi) + " " +
                       kv("t_max", t_max) + " " + kv("samples", samples) + " " + kv("steps", steps));
  t.columns = {"t", "gamma_minus", "gamma_plus", "partial"};
  if (cfg.analytic) {
    t.columns.push_back("gamma_minus_analytic");
    t.columns.push_back("gamma_plus_analytic");
  }
  if (samples < 2) return t;

  const long per = (steps + samples - 2) / (samples - 1);
  const PlaneSampler path = [h, t_max](double lam) { return three::ground_plane(h.at(lam * t_max)); };
  const std::vector<HolonomyResult> hol = intermediate_holonomies(path, per * (samples - 1));
  for (long k = 0; k < samples; ++k) {
    const double tk = tgrid(t_max, k, samples);
    const HolonomyResult& r = hol[k * per];
    std::vector<double> row{tk};
    push_phases(row, r.phases);
    row.push_back(r.partial ? 1.0 : 0.0);
    if (cfg.analytic) {
      const auto a = three::helix_phases_closed_form(h, tk);
      // the closed form assumes anti-orthogonal end planes
      row.push_back(r.partial ? nan : a[0]);
      row.push_back(r.partial ? nan : a[1]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

csv::Table geodesic_table(const RunConfig& cfg) {
  three::TorusPoint from, to;
  from.r = to.r = positive(cfg.r, 3.0, "r");
  from.s = to.s = positive(cfg.s, 2.0, "s");
  from.theta = finite(cfg.theta_start, 2 * pi / 3, "theta-start");
  from.phi = finite(cfg.phi_start, pi / 3, "phi-start");
  to.theta = finite(cfg.theta_end, 0.0, "theta-end");
  to.phi = finite(cfg.phi_end, 0.0, "phi-end");
  const long samples = sample_count(cfg);

  csv::Table t;
  t.comments.push_back("geodesic " + kv("r", from.r) + " " + kv("s", from.s) + " " +
                       kv("theta_start", from.theta) + " " + kv("phi_start", from.phi) + " " +
                       kv("theta_end", to.theta) + " " + kv("phi_end", to.phi) + " " +
                       kv("samples", samples));
  t.columns = {"tau", "r", "s", "theta", "phi"};
  const auto x = three::parameter_geodesic(from, to);
  if (samples < 2) return t;
  for (long k = 0; k < samples; ++k) {
    const double tau = tgrid(1.0, k, samples);
    const three::TorusPoint p = x(tau);
    t.rows.push_back({tau, p.r, p.s, p.theta, p.phi});
  }
  return t;
}

csv::Table exact_table(const RunConfig& cfg) {
  three::HelixSpec h;
  h.r = positive(cfg.r, 1.1, "r");
  h.s = positive(cfg.s, 1.1, "s");
  h.omega_theta = finite(cfg.omega_theta, 0.1, "omega-theta");
  h.omega_phi = finite(cfg.omega_phi, -h.omega_theta, "omega-phi");
  const double fastest = std::max(std::abs(h.omega_theta), std::abs(h.omega_phi));
  const double t_max = positive(cfg.t_max, fastest > 0 ? 2 * pi / fastest : 1.0, "t-max");
  const long samples = sample_count(cfg);
  const long steps = step_count(cfg, 100000);

  csv::Table t;
  t.comments.push_back("exact " + kv("r", h.r) + " " + kv("s", h.s) + " " +
                       kv("omega_theta", h.omega_theta) + " " + kv("omega_phi", h.omega_phi) + " " +
                       kv("t_max", t_max) + " " + kv("samples", samples) + " " + kv("steps", steps));
  t.columns = {"t", "dFS_ad", "dFS_0", "gamma_minus", "gamma_plus", "gamma0_minus", "gamma0_plus"};
  if (samples < 2) return t;

  const auto track = three::exact_plane_tracking(h, t_max, samples, steps);
  for (const auto& p : track) {
    std::vector<double> row{p.t, p.dFS_adiabatic, p.dFS_initial};
    push_phases(row, p.holonomy.phases);
    push_phases(row, three::helix_holonomy_analytic(h, p.t).phases);
    t.rows.push_back(std::move(row));
  }
  return t;
}

int cmd_phases_helix(const RunConfig& cfg, std::ostream& err) { return run(cfg, err, phases_helix_table); }
int cmd_geodesic(const RunConfig& cfg, std::ostream& err) { return run(cfg, err, geodesic_table); }
int cmd_exact(const RunConfig& cfg, std::ostream& err) { return run(cfg, err, exact_table); }

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validation::Options o;
  o.seed = cfg.seed;
  o.quick = cfg.quick;
  o.inject_fault = cfg.inject_fault;
  const auto& names = validation::check_names();
  if (!o.inject_fault.empty() && std::find(names.begin(), names.end(), o.inject_fault) == names.end()) {
    err << "error: unknown fault target '" << o.inject_fault << "'\n";
    return kBadArgs;
  }
  int failed = 0;
  // one check at a time so the lines appear as they finish
  using Check = validation::Result (*)(const validation::Options&);
  const Check checks[] = {validation::polar_suite,      validation::optimality_suite,
                          validation::geodesic_consistency, validation::helix_phases,
                          validation::frozen_regime,    validation::exact_dynamics,
                          validation::degeneracy_suite, validation::hyperplane_and_torus};
  for (Check c : checks) {
    const validation::Result r = c(o);
    failed += !r.pass;
    out << validation::format(r) << std::flush;
  }
  out << "SUMMARY passed=" << (8 - failed) << " failed=" << failed << "\n";
  return failed ? kValidation : kOk;
}

}  // namespace holo::cli
