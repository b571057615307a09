#include <algorithm>
#include <cmath>
#include <numbers>

#include "holo/phase.hpp"
#include "holo/threestate.hpp"
#include "transport_detail.hpp"

namespace holo::three {

namespace {

constexpr double pi = std::numbers::pi;

double sq(double x) { return x * x; }
cplx expi(double a) { return std::polar(1.0, a); }

}  // namespace

PhiZeroConstants phizero_constants(double r, double s, double wt) {
  const double N1s = sq(r) + sq(s) + sq(r * s);
  PhiZeroConstants k;
  k.omega = 0.5 * std::sqrt(sq(wt + r / s - s / r - r * s) + 4 * (1 + sq(r)));
  k.eps_plus = N1s / (2 * r * s) + wt / 2 + k.omega;
  k.eps_minus = N1s / (2 * r * s) + wt / 2 - k.omega;
  k.A = N1s / (2 * r * s) + (sq(r) / N1s - 0.5) * wt + k.omega;
  k.B = r * s / N1s * std::sqrt(1 + sq(r)) * wt;
  return k;
}

PhiZeroDynamics exact_dynamics_phizero(double r, double s, double wt, double t) {
  if (wt == 0.0) throw PreconditionError("exact_dynamics_phizero: omega_theta must be nonzero");
  const double N1s = sq(r) + sq(s) + sq(r * s);
  const PhiZeroConstants k = phizero_constants(r, s, wt);
  const double w = k.omega;
  const Eigenframe f = eigenframe(TorusPoint{r, s, wt * t, 0.0});

  PhiZeroDynamics out;
  const double sw = std::sin(w * t);
  out.psi22 = expi(-0.5 * (N1s / (r * s) + wt) * t) *
              (I * (k.B / w) * sw * f.excited + (I * (k.A / w) * sw + expi(-w * t)) * f.ground.col(1));
  out.dFS = std::asin(std::min(1.0, std::abs(k.B / w * sw)));

  const double g = r * s * (1 + sq(r));
  const cplx C = sq(r) + (1 + sq(r)) * sq(s) * expi(wt * t);
  const cplx S = N1s / (r * s) * C + (sq(r) - (1 + sq(r)) * sq(s) * expi(wt * t)) * wt;
  out.gamma = -N1s / (2 * r * s) * t - wt * t / 2 + g * sq(wt) * t / (2 * N1s * sq(w)) -
              g * std::sin(2 * w * t) * sq(wt) / (4 * N1s * w * sq(w)) +
              std::arg(2 * w * C * std::cos(w * t) + I * S * sw);

  out.gamma0 = std::arg(C) - (1 + sq(r)) * sq(s) * wt * t / N1s;

  // First superadiabatic correction.
  const double th = wt * t, a = sq(r), b = (1 + sq(r)) * sq(s);
  const double c2 = sq(a) + sq(b) + 2 * a * b * std::cos(th);
  const double rs3 = r * r * r * s * s * s;
  out.gamma1 = 3 * rs3 * (1 + sq(r)) / (N1s * N1s * N1s) * sq(wt) * t -
               4 * rs3 * (1 + sq(r)) / sq(N1s) * sw * std::sin(th / 2) *
                   (a * std::sin(w * t - th / 2) + b * std::sin(w * t + th / 2)) / c2 * wt;
  return out;
}

CMatrix rotating_hamiltonian(double r, double s, double wt, double wp) {
  CMatrix H = H0(r, s);
  H(0, 0) += wp;
  H(1, 1) += wt;
  return H;
}

ExactEigs exact_eigs_general(double r, double s, double wt, double wp) {
  const double N1s = sq(r) + sq(s) + sq(r * s);
  ExactEigs out;
  const CMatrix Hp = rotating_hamiltonian(r, s, wt, wp);

  if (wt == 0.0 && wp == 0.0) {
    const Eigenframe f = eigenframe(TorusPoint{r, s, 0.0, 0.0});
    out.eps = {0.0, 0.0, f.E1};
    out.vecs.resize(3, 3);
    out.vecs << f.ground, f.excited;
    out.fallback = true;
    return out;
  }

  const double a2 = N1s / (r * s) + wt + wp;
  const double a1 = (r * s + s / r) * wt + (r * s + r / s) * wp + wt * wp;
  const double a0 = r * s * wt * wp;
  const double p = sq(a2) / 9 - a1 / 3;
  const double q = a2 * a2 * a2 / 27 - a1 * a2 / 6 + a0 / 2;
  const double scale = std::max({std::abs(a2), std::sqrt(std::abs(a1)), std::cbrt(std::abs(a0)), 1.0});
  if (p <= 1e-14 * sq(scale)) {
    out.eps = {a2 / 3, a2 / 3, a2 / 3};
  } else {
    double c = q / (p * std::sqrt(p));
    if (std::abs(c) > 1 + 1e-10)
      throw NumericalInstability("exact_eigs_general: arccos argument " + std::to_string(c) +
                                 " outside [-1, 1]");
    c = std::clamp(c, -1.0, 1.0);
    const double base = std::acos(c) / 3;
    for (int k = 0; k < 3; ++k)
      out.eps[k] = a2 / 3 + 2 * std::sqrt(p) * std::cos(base + k * 2 * pi / 3);
    std::sort(out.eps.begin(), out.eps.end());
  }

  out.vecs.resize(3, 3);
  for (int k = 0; k < 3; ++k) {
    const double e = out.eps[k];
    CVector v(3), u(3);
    v << e, e * e - (r * s + s / r + wp) * e + r * s * wp, r * (e - wp);
    u << e * e - (r * s + r / s + wt) * e + r * s * wt, e, s * (e - wt);
    const CVector& best = v.norm() >= u.norm() ? v : u;
    const double nb = best.norm();
    if (nb <= 1e-8 * sq(scale)) {
      out.fallback = true;
      break;
    }
    out.vecs.col(k) = best / nb;
  }
  // Near-degenerate roots make the closed-form vectors lose orthogonality.
  if (out.fallback || unitarity_defect(out.vecs) > 1e-9) {
    const HermitianSpectrum sp = eigh(Hp);
    out.vecs = sp.vectors;
    for (int k = 0; k < 3; ++k) out.eps[k] = sp.values(k);
    out.fallback = true;
  }
  return out;
}

CMatrix exact_propagator(const HelixSpec& h, const ExactEigs& e, double t) {
  CVector ph(3);
  for (int k = 0; k < 3; ++k) ph(k) = expi(-e.eps[k] * t);
  const TorusPoint x0 = h.at(0), xt = h.at(t);
  return U0(xt.theta, xt.phi) * e.vecs * ph.asDiagonal() * e.vecs.adjoint() *
         U0(x0.theta, x0.phi).adjoint();
}

std::vector<TrackingSample> exact_plane_tracking(const HelixSpec& h, double t_max, long samples,
                                                 long steps) {
  if (samples < 2) throw PreconditionError("exact_plane_tracking: need at least two samples");
  if (steps < 2) throw PreconditionError("exact_plane_tracking: need at least two steps");
  const long intervals = samples - 1;
  const long per = (steps + intervals - 1) / intervals;
  const long N = per * intervals;

  const ExactEigs e = exact_eigs_general(h.r, h.s, h.omega_theta, h.omega_phi);
  const CMatrix G0 = eigenframe(h.at(0)).ground;
  auto frame_at = [&](double t) -> CMatrix { return exact_propagator(h, e, t) * G0; };
  const PlaneSampler path = [&](double lam) { return NPlane(frame_at(lam * t_max)); };

  const std::vector<HolonomyResult> hol = intermediate_holonomies(path, N);
  std::vector<TrackingSample> out(samples);
  const NPlane V0(G0);
  detail::ParallelErrors errors;
#pragma omp parallel for schedule(static)
  for (long k = 0; k < samples; ++k) {
    errors.run([&] {
      const double t = t_max * static_cast<double>(k) / static_cast<double>(intervals);
      const NPlane Vt(frame_at(t));
      out[k].t = t;
      out[k].dFS_adiabatic = fubini_study_distance(Vt, ground_plane(h.at(t)));
      out[k].dFS_initial = fubini_study_distance(Vt, V0);
      out[k].holonomy = hol[k * per];
    });
  }
  errors.rethrow();
  return out;
}

}  // namespace holo::three
