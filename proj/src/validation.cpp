#include "holo/validation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "holo/dynamics.hpp"
#include "holo/geodesics.hpp"
#include "holo/phase.hpp"
#include "holo/threestate.hpp"

namespace holo::validation {

namespace {

constexpr double pi = std::numbers::pi;
using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

class Run {
 public:
  Run(int id, std::string name, double limit) : start_(Clock::now()) {
    r_.id = id;
    r_.name = std::move(name);
    r_.time_limit = limit;
  }
  void metric(const std::string& key, double v) { r_.metrics.push_back(key + "=" + num(v)); }
  // value <= limit, recorded as a metric either way
  void at_most(const std::string& key, double value, double limit) {
    metric(key, value);
    if (!(value <= limit)) r_.failures.push_back(key + "=" + num(value) + " exceeds " + num(limit));
  }
  void fail(const std::string& why) { r_.failures.push_back(why); }
  Result finish() {
    r_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    if (r_.seconds >= r_.time_limit)
      r_.failures.push_back("runtime " + num(r_.seconds) + "s over " + num(r_.time_limit) + "s");
    r_.pass = r_.failures.empty();
    return r_;
  }

 private:
  Result r_;
  Clock::time_point start_;
};

template <class Body>
Result guarded(int id, const char* name, double limit, Body body) {
  Run run(id, name, limit);
  try {
    body(run);
  } catch (const std::exception& e) {
    run.fail(std::string("exception: ") + e.what());
  }
  return run.finish();
}

double fault(const Options& o, const char* name, double size) {
  return o.inject_fault == name ? size : 0.0;
}

// Max circular distance under the better of the two pairings of two phase pairs.
double paired_distance(const std::vector<double>& a, const std::array<double, 2>& b) {
  if (a.size() != 2) return pi;
  const double d1 = std::max(circular_distance(a[0], b[0]), circular_distance(a[1], b[1]));
  const double d2 = std::max(circular_distance(a[0], b[1]), circular_distance(a[1], b[0]));
  return std::min(d1, d2);
}

NPlane random_plane(int d, int n, Rng& rng) { return NPlane::from_span(random_gaussian(d, n, rng)); }

std::pair<NPlane, NPlane> anti_orthogonal_pair(int d, int n, Rng& rng) {
  for (;;) {
    NPlane V = random_plane(d, n, rng), W = random_plane(d, n, rng);
    if (is_anti_orthogonal(V, W, 1e-3)) return {std::move(V), std::move(W)};
  }
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += std::log(x[k]) / n;
    my += std::log(y[k]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (std::log(x[k]) - mx) * (std::log(y[k]) - my);
    sxx += (std::log(x[k]) - mx) * (std::log(x[k]) - mx);
  }
  return sxy / sxx;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"polar",  "optimality", "geodesic",   "helix",
                                              "frozen", "exact",      "degeneracy", "hyperplane"};
  return names;
}

Result polar_suite(const Options& o) {
  return guarded(1, "polar", 1.0, [&](Run& run) {
    Rng rng(o.seed + 1);
    const int count = o.quick ? 40 : 200;
    double rec = 0, herm = 0, neg = 0, routes = 0, to_ustar = 0;
    int deficient = 0;
    for (int k = 0; k < count; ++k) {
      const int n = 2 + k % 5;
      CMatrix F;
      if (k % 4 == 3) {  // rank n - 1
        F = random_gaussian(n, n - 1, rng) * random_gaussian(n - 1, n, rng);
        ++deficient;
      } else {
        F = random_gaussian(n, n, rng);
      }
      const PolarFactors p = polar_decompose(F);
      CMatrix U = p.Ustar;
      U(0, 0) += fault(o, "polar", 1e-6);
      const double scale = std::max(1.0, F.norm());
      rec = std::max(rec, (F - U * p.R).norm() / scale);
      herm = std::max(herm, hermiticity_defect(p.R) / scale);
      neg = std::max(neg, -eigh(0.5 * (p.R + p.R.adjoint())).values(0) / scale);
      const CMatrix right = F * pinv_psd(p.R);
      const CMatrix left = pinv_psd(p.Rprime) * F;
      routes = std::max(routes, (right - left).norm());
      to_ustar = std::max(to_ustar, (right - U).norm());
    }
    run.metric("matrices", count);
    run.metric("rank_deficient", deficient);
    run.at_most("reconstruction", rec, 1e-9);
    run.at_most("R_hermiticity", herm, 1e-9);
    run.at_most("R_negative_eig", neg, 1e-9);
    run.at_most("route_gap", routes, 1e-9);
    run.at_most("ustar_gap", to_ustar, 1e-9);
  });
}

Result optimality_suite(const Options& o) {
  return guarded(2, "optimality", 10.0, [&](Run& run) {
    Rng rng(o.seed + 2);
    const int pairs = o.quick ? 20 : 100;
    const int competitors = o.quick ? 200 : 1000;
    double excess = 0, to_max = 0, herm = 0, neg = 0;
    for (int k = 0; k < pairs; ++k) {
      const int d = 3 + k % 4;
      const int n = 1 + k % (d - 1);
      const auto [V, W] = anti_orthogonal_pair(d, n, rng);
      const CMatrix M = overlap_matrix(W.frame(), V.frame());
      const CMatrix G = teletransporter(V, W).matrix * std::polar(1.0, fault(o, "optimality", 1e-6));
      const CMatrix S = G.adjoint() * M;  // S(Gamma V, V)
      const double best = S.trace().real();
      const double sum_sigma = Eigen::JacobiSVD<CMatrix>(M).singularValues().sum();
      to_max = std::max(to_max, std::abs(best - sum_sigma));
      for (int c = 0; c < competitors; ++c) {
        const CMatrix Q = random_unitary(n, rng);
        excess = std::max(excess, (Q.adjoint() * M).trace().real() - best);
      }
      herm = std::max(herm, hermiticity_defect(S));
      neg = std::max(neg, -eigh(0.5 * (S + S.adjoint())).values(0));
    }
    run.metric("pairs", pairs);
    run.metric("competitors", competitors);
    run.at_most("competitor_excess", excess, 1e-9);
    run.at_most("gap_to_sigma_sum", to_max, 1e-9);
    run.at_most("overlap_hermiticity", herm, 1e-9);
    run.at_most("overlap_negative_eig", neg, 1e-9);
  });
}

Result geodesic_consistency(const Options& o) {
  return guarded(3, "geodesic", 30.0, [&](Run& run) {
    Rng rng(o.seed + 3);
    const int pairs = o.quick ? 10 : 50;
    const long N = 2000;
    double worst = 0, ratio_dev = 0;
    for (int k = 0; k < pairs; ++k) {
      const int d = 4 + k % 2;
      const auto [V, W] = anti_orthogonal_pair(d, 2, rng);
      const Geodesic g = shortest_geodesic(V, W);
      const CMatrix F0 = g.frame_at(0.0), F1 = g.frame_at(1.0);
      const CMatrix target = W.frame() * teletransporter(V, W).matrix * V.frame().adjoint();
      double err[2];
      for (int m = 0; m < 2; ++m) {
        CMatrix T = continuous_transport(g.sampler(), N << m);
        T(0, 0) += fault(o, "geodesic", 1e-2);
        err[m] = (F1 * T * F0.adjoint() - target).norm();
      }
      worst = std::max(worst, err[0]);
      ratio_dev = std::max(ratio_dev, std::abs(err[0] / err[1] - 2.0));
    }
    run.metric("pairs", pairs);
    run.at_most("transport_error_N2000", worst, 5e-3);
    run.at_most("halving_ratio_deviation", ratio_dev, 0.2);
  });
}

Result helix_phases(const Options& o) {
  return guarded(4, "helix", 60.0, [&](Run& run) {
    three::HelixSpec h;
    h.r = 3;
    h.s = 2;
    h.omega_theta = 2 * pi;
    h.omega_phi = -4 * pi;
    const long N = 100000;
    double worst = 0, analytic = 0;
    for (double t : {0.25, 0.5, 1.0}) {
      const PlaneSampler path = [h, t](double lam) { return three::ground_plane(h.at(lam * t)); };
      HolonomyResult numeric = holonomy(path, N);
      if (numeric.partial || numeric.phases.size() != 2) {
        run.fail("numeric holonomy partial at t=" + num(t));
        continue;
      }
      for (double& p : numeric.phases) p += fault(o, "helix", 1e-2);
      const auto closed = three::helix_phases_closed_form(h, t);
      worst = std::max(worst, paired_distance(numeric.phases, closed));
      analytic = std::max(analytic, paired_distance(three::helix_holonomy_analytic(h, t).phases, closed));
      if (t == 1.0) {
        const three::HelixRotation hr = three::helix_rotation(h);
        const std::array<double, 2> cyc{wrap_angle(-hr.Omega / 2 - hr.zeta),
                                         wrap_angle(hr.Omega / 2 - hr.zeta)};
        run.at_most("cyclic_gap", paired_distance(numeric.phases, cyc), 1e-3);
      }
    }
    run.at_most("numeric_vs_closed_form", worst, 1e-3);
    run.metric("analytic_matrix_vs_closed_form", analytic);
  });
}

Result frozen_regime(const Options& o) {
  return guarded(5, "frozen", 10.0, [&](Run& run) {
    const double r = 1.1, w = 1.0;
    three::HelixSpec h;
    h.r = h.s = r;
    h.omega_theta = w;
    h.omega_phi = -w;
    const auto [t1, t2] = three::frozen_window(r, w);
    const int M = 20;
    double inside = 0, outside = 0;
    for (int k = 0; k < M; ++k) {
      const double t = t1 + (t2 - t1) * (k + 0.5) / M;
      HolonomyResult hol = three::helix_holonomy_analytic(h, t);
      if (hol.phases.size() != 2) {
        run.fail("partial holonomy inside the window at t=" + num(t));
        continue;
      }
      for (double p : hol.phases) {
        p += fault(o, "frozen", 1e-5);
        inside = std::max(inside, std::min(circular_distance(p, 0.0), circular_distance(p, pi)));
      }
    }
    for (int k = 0; k < M; ++k) {
      // half of the points before t1, half after t2
      const double f = (k % (M / 2) + 0.5) / (M / 2);
      const double t = k < M / 2 ? t1 * f : t2 + (2 * pi / w - t2) * f;
      HolonomyResult hol = three::helix_holonomy_analytic(h, t);
      for (double& p : hol.phases) p += fault(o, "frozen", 1e-5);
      outside = std::max(outside, paired_distance(hol.phases, three::frozen_regime_phases(r, w, t)));
    }
    run.metric("t1", t1);
    run.metric("t2", t2);
    run.at_most("inside_distance_to_0_or_pi", inside, 1e-6);
    run.at_most("outside_vs_formula", outside, 1e-6);
  });
}

Result exact_dynamics(const Options& o) {
  return guarded(6, "exact", 60.0, [&](Run& run) {
    const double r = 3, s = 2, wt = 1;
    three::HelixSpec h;
    h.r = r;
    h.s = s;
    h.omega_theta = wt;
    const HamiltonianSampler H = [h](double t) { return three::hamiltonian(h.at(t)); };
    const CVector psi0 = three::eigenframe(h.at(0)).ground.col(1);
    const double T = 2 * pi / wt;
    const long steps = 200000;
    const double dt = T / steps;

    const EvolutionRecord rec = evolve(H, psi0, T, steps, 1000);
    double state = 0;
    for (std::size_t k = 0; k < rec.times.size(); ++k) {
      CVector psi = rec.states[k];
      psi(0) += fault(o, "exact", 1e-5);
      state = std::max(state, (psi - three::exact_dynamics_phizero(r, s, wt, rec.times[k]).psi22).norm());
    }
    run.at_most("state_error", state, 1e-6);

    const three::PhiZeroConstants kc = three::phizero_constants(r, s, wt);
    const double amp = std::asin(std::abs(kc.B / kc.omega));
    const double tstar = pi / (2 * kc.omega);
    auto distance = [&](const CVector& psi, double t) {
      return std::asin(std::min(1.0, std::abs(three::eigenframe(h.at(t)).excited.dot(psi))));
    };
    const three::PhiZeroDynamics at = three::exact_dynamics_phizero(r, s, wt, tstar);
    run.at_most("amplitude_formula", std::max(std::abs(distance(at.psi22, tstar) - amp),
                                              std::abs(at.dFS - amp)),
                1e-9);
    const long n_star = static_cast<long>(std::ceil(tstar / dt));
    const EvolutionRecord peak = evolve(H, psi0, tstar, n_star, n_star);
    run.at_most("amplitude_integrator", std::abs(distance(peak.states.back(), tstar) - amp), 1e-5);

    std::vector<double> ws{0.1, 0.05, 0.025}, e0, e1;
    const int M = o.quick ? 4000 : 20000;
    for (double w : ws) {
      double m0 = 0, m1 = 0;
      for (int k = 0; k <= M; ++k) {
        const double t = 2 * pi / w * k / M;
        const three::PhiZeroDynamics d = three::exact_dynamics_phizero(r, s, w, t);
        m0 = std::max(m0, circular_distance(d.gamma, d.gamma0));
        m1 = std::max(m1, circular_distance(d.gamma, d.gamma0 + d.gamma1));
      }
      e0.push_back(m0);
      e1.push_back(m1);
    }
    const double s0 = loglog_slope(ws, e0), s1 = loglog_slope(ws, e1);
    run.metric("max_gamma_minus_gamma0_at_0.1", e0[0]);
    run.at_most("zeroth_order_slope_deviation", std::abs(s0 - 1), 0.1);
    run.at_most("first_order_slope_deviation", std::abs(s1 - 2), 0.2);
  });
}

Result degeneracy_suite(const Options& o) {
  return guarded(7, "degeneracy", 5.0, [&](Run& run) {
    Rng rng(o.seed + 7);
    std::uniform_real_distribution<double> mag(0.3, 3.0), ang(-pi, pi), off(0.05, pi - 0.05);
    std::bernoulli_distribution coin(0.5);
    const int count = o.quick ? 100 : 500;
    double pair = 0, gap = 0, level = 0, poly = 0, closest = 1e300;
    int rejected_real = 0, accepted_complex = 0;
    for (int k = 0; k < 2 * count; ++k) {
      const bool real = k < count;
      const double pa = ang(rng), pb = ang(rng);
      double pc = -pa - pb + (coin(rng) ? pi : 0.0);
      if (!real) pc += coin(rng) ? off(rng) : -off(rng);
      three::CouplingTriple c{std::polar(mag(rng), pa), std::polar(mag(rng), pb), std::polar(mag(rng), pc)};
      const three::DegeneracyResult d = three::degeneracy_complete(c);
      if (real) {
        if (!d.accepted) {
          ++rejected_real;
          continue;
        }
        const CMatrix H = three::assemble_hamiltonian(c, d.a, d.b, d.c);
        const RVector ev = eigh(H).values;
        const double scale = std::max(std::abs(ev(0)), std::abs(ev(2)));
        const bool low = ev(1) - ev(0) < ev(2) - ev(1);
        const double twin = low ? 0.5 * (ev(0) + ev(1)) : 0.5 * (ev(1) + ev(2));
        const double single = low ? ev(2) : ev(0);
        pair = std::max(pair, std::min(ev(1) - ev(0), ev(2) - ev(1)) / scale);
        const double E2 = d.E2 + fault(o, "degeneracy", 1e-6) * scale;
        level = std::max(level, std::abs(E2 - twin) / scale);
        gap = std::max(gap, std::abs((single - twin) - three::predicted_gap(c)) / scale);
        poly = std::max(poly, three::minimal_polynomial_residual(H, d.E1, E2) / (scale * scale));
      } else {
        if (d.accepted) ++accepted_complex;
        // the diagonal the real case would use, from the real parts
        const cplx ta = c.beta * c.gamma / std::conj(c.alpha);
        const cplx tb = c.gamma * c.alpha / std::conj(c.beta);
        const cplx tc = c.alpha * c.beta / std::conj(c.gamma);
        const double e2 = -(ta + tb + tc).real() / 3;
        const CMatrix H = three::assemble_hamiltonian(c, e2 + ta.real(), e2 + tb.real(), e2 + tc.real());
        const RVector ev = eigh(H).values;
        const double scale = std::max(std::abs(ev(0)), std::abs(ev(2)));
        closest = std::min(closest, std::min(ev(1) - ev(0), ev(2) - ev(1)) / scale);
      }
    }
    run.metric("triples", 2 * count);
    run.at_most("real_rejected", rejected_real, 0);
    run.at_most("complex_accepted", accepted_complex, 0);
    run.at_most("twofold_pair_gap", pair, 1e-9);
    run.at_most("E2_mismatch", level, 1e-9);
    run.at_most("gap_vs_prediction", gap, 1e-9);
    run.at_most("minimal_polynomial", poly, 1e-9);
    run.metric("complex_min_gap", closest);
    if (!(closest > 1e-6)) run.fail("complex_min_gap=" + num(closest) + " not above 1e-06");
  });
}

Result hyperplane_and_torus(const Options& o) {
  return guarded(8, "hyperplane", 10.0, [&](Run& run) {
    Rng rng(o.seed + 8);
    const int count = o.quick ? 50 : 200;
    double sig = 0, proj = 0;
    int shape = 0;
    for (int k = 0; k < count; ++k) {
      const int d = 3 + k % 2;
      const NPlane V = random_plane(d, d - 1, rng), W = random_plane(d, d - 1, rng);
      PrincipalStructure fast = hyperplane_structure(V, W);
      const PrincipalStructure gen = principal_structure(V, W);
      fast.blocks.back().sigma += fault(o, "hyperplane", 1e-6);
      if (fast.blocks.size() != gen.blocks.size() || fast.rank != gen.rank) {
        ++shape;
        continue;
      }
      for (std::size_t b = 0; b < gen.blocks.size(); ++b) {
        const PrincipalBlock &x = fast.blocks[b], &y = gen.blocks[b];
        if (x.multiplicity() != y.multiplicity()) {
          ++shape;
          break;
        }
        sig = std::max(sig, std::abs(x.sigma - y.sigma));
        proj = std::max(proj, (x.v_frame * x.v_frame.adjoint() - y.v_frame * y.v_frame.adjoint()).norm());
        proj = std::max(proj, (x.w_frame * x.w_frame.adjoint() - y.w_frame * y.w_frame.adjoint()).norm());
      }
    }
    run.metric("pairs", count);
    run.at_most("block_shape_mismatch", shape, 0);
    run.at_most("sigma_gap", sig, 1e-9);
    run.at_most("block_projector_gap", proj, 1e-9);

    // grid 2 pi (k - 1) / 48, k = 1..50, so 2 pi / 3 and 4 pi / 3 are on it
    const int G = 50;
    const NPlane base = three::ground_plane(three::TorusPoint{1, 1, 0, 0});
    int mismatch = 0, orthogonal = 0;
    for (int i = 0; i < G; ++i)
      for (int j = 0; j < G; ++j) {
        const double dth = 2 * pi * i / 48, dph = 2 * pi * j / 48;
        const NPlane P = three::ground_plane(three::TorusPoint{1, 1, dth, dph});
        const double smin =
            Eigen::JacobiSVD<CMatrix>(overlap_matrix(P.frame(), base.frame())).singularValues()(1);
        const bool predicted = three::torus_pair_orthogonal(1, 1, dth, dph);
        orthogonal += predicted;
        if ((smin < 1e-8) != predicted) ++mismatch;
      }
    run.metric("torus_predicted_orthogonal", orthogonal);
    run.at_most("torus_mismatch", mismatch, 0);
    if (orthogonal == 0) run.fail("no orthogonal pair on the torus grid");
  });
}

std::vector<Result> run_all(const Options& o) {
  return {polar_suite(o),     optimality_suite(o), geodesic_consistency(o), helix_phases(o),
          frozen_regime(o),   exact_dynamics(o),   degeneracy_suite(o),     hyperplane_and_torus(o)};
}

std::string format(const Result& r) {
  std::string s = std::string(r.pass ? "PASS" : "FAIL") + " " + std::to_string(r.id) + " " + r.name +
                  " time=" + num(r.seconds) + "s limit=" + num(r.time_limit) + "s";
  for (const auto& m : r.metrics) s += " " + m;
  s += "\n";
  for (const auto& f : r.failures) s += "  failure: " + f + "\n";
  return s;
}

}  // namespace holo::validation
