#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holo/transport.hpp"

// Three-level model with a twofold degenerate ground level. Energies use
// C = 1 and E2 = 0: the ground plane of H(x) is its kernel and the excited
// level sits at E1 = N1^2 / (r s).
namespace holo::three {

struct TorusPoint {
  double r = 1, s = 1, theta = 0, phi = 0;
};

struct CouplingTriple {
  cplx alpha, beta, gamma;
};

// x(t) = (r, s, theta0 + omega_theta t, phi0 + omega_phi t)
struct HelixSpec {
  double r = 3, s = 2, omega_theta = 0, omega_phi = 0, theta0 = 0, phi0 = 0;
  TorusPoint at(double t) const;
};

double n1(double r, double s);  // sqrt(r^2 + s^2 + r^2 s^2)
// 2 sqrt(r^2 sin^2(dth/2) + s^2 sin^2(dph/2) + sin^2((dth - dph)/2))
double n2(double r, double s, double dtheta, double dphi);

// ---- degeneracy conditions --------------------------------------------------

struct DegeneracyResult {
  bool accepted = false;
  std::string violated;  // why not, when rejected
  double E1 = 0, E2 = 0;
  double a = 0, b = 0, c = 0;
};

// Accepts iff alpha beta gamma is real (relative tolerance 1e-12); then the
// diagonal that makes E2 twofold.
DegeneracyResult degeneracy_complete(const CouplingTriple& k);

// [[a, gamma, beta*], [gamma*, b, alpha], [beta, alpha*, c]]
CMatrix assemble_hamiltonian(const CouplingTriple& k, double a, double b, double c);

CouplingTriple couplings(const TorusPoint& x);  // r e^{i th}, s e^{-i ph}, e^{i(ph - th)}

// (1/|alpha|^2 + 1/|beta|^2 + 1/|gamma|^2) alpha beta gamma
double predicted_gap(const CouplingTriple& k);

// || (H - E1)(H - E2) ||_F
double minimal_polynomial_residual(const CMatrix& H, double E1, double E2);

// ---- the family H(x) ---------------------------------------------------------

CMatrix H0(double r, double s);
CMatrix U0(double theta, double phi);  // diag(e^{i phi}, e^{i theta}, 1)
CMatrix hamiltonian(const TorusPoint& x);  // U0 H0 U0^dagger

struct Eigenframe {
  CVector excited;
  CMatrix ground;  // columns |2_1>, |2_2>
  double E1 = 0;
};
Eigenframe eigenframe(const TorusPoint& x);
NPlane ground_plane(const TorusPoint& x);

struct TorusGauge {
  CMatrix A_theta, A_phi;
};
// Gauge field of the ground frame along theta and phi; independent of the angles.
TorusGauge torus_gauge(double r, double s);

// Constant field A = A_theta omega_theta + A_phi omega_phi of a helix, split as
// A = -zeta I + (Omega/2) (-u . sigma), so exp(i A t) = e^{-i zeta t} R_u(Omega t)
// with R_u(a) = cos(a/2) - i sin(a/2) u . sigma.
struct HelixRotation {
  CMatrix A;
  double zeta = 0, Omega = 0, N3 = 0;
  std::array<double, 3> u{0, 0, 1};
};
HelixRotation helix_rotation(const HelixSpec& h);
CMatrix helix_transport(const HelixSpec& h, double t);  // exp(i A t) from the rotation form

// ---- teleparallelism on the torus --------------------------------------------

// Gamma from the ground plane at `from` to the one at `to`, built from the
// |+>, |->, |-'> vectors; matrix in the eigenframe bases.
Teletransporter analytic_teletransporter(const TorusPoint& from, const TorusPoint& to);

// Solutions (alpha, beta) of a e^{i alpha} + b e^{i beta} + 1 = 0.
std::vector<std::pair<double, double>> complex_triangle(double a, double b);

// Whether the excited vectors at the two points are orthogonal (so the ground
// planes are not anti-orthogonal), as predicted by the triangle solutions.
bool torus_pair_orthogonal(double r, double s, double dtheta, double dphi, double tol = 1e-9);

// Parameter-space curve whose ground planes trace the shortest geodesic from
// the plane at `from` (tau = 0) to the plane at `to` (tau = 1).
std::function<TorusPoint(double)> parameter_geodesic(const TorusPoint& from, const TorusPoint& to);

// ---- helix holonomies ----------------------------------------------------------

// Analytic non-cyclic holonomy Gamma_{V2 V2(t)} exp(i A t) in the ground frame at t = 0.
HolonomyResult helix_holonomy_analytic(const HelixSpec& h, double t);

// gamma_(-/+) = pi + ((w_th + w_ph)/2 - zeta) t - xi(t) -/+ chi(t), with cos chi
// from the C(t), S(t) closed form; (+-Omega/2 - zeta) t where the helix closes.
// Sorted ascending after wrapping.
std::array<double, 2> helix_phases_closed_form(const HelixSpec& h, double t);

// cos chi(t) of the closed form (not defined where the helix closes).
double helix_cos_chi(const HelixSpec& h, double t);

// Case r = s, omega_phi = -omega_theta = -omega0, outside the frozen window.
std::array<double, 2> frozen_regime_phases(double r, double omega0, double t);
// (t1, t2) with cos(omega0 t) = -r^2/2; needs r < sqrt(2).
std::pair<double, double> frozen_window(double r, double omega0);

// ---- exact dynamics -------------------------------------------------------------

struct PhiZeroDynamics {
  CVector psi22;
  double dFS = 0;
  double gamma = 0;
  double gamma0 = 0;
  double gamma1 = 0;
};
// omega_phi = 0, theta0 = phi0 = 0, initial state |2_2(x0)>.
PhiZeroDynamics exact_dynamics_phizero(double r, double s, double omega_theta, double t);

struct PhiZeroConstants {
  double omega, eps_plus, eps_minus, A, B;
};
PhiZeroConstants phizero_constants(double r, double s, double omega_theta);

// H' = H0 + diag(omega_phi, omega_theta, 0), the rotating-frame Hamiltonian.
CMatrix rotating_hamiltonian(double r, double s, double omega_theta, double omega_phi);

struct ExactEigs {
  std::array<double, 3> eps{};  // ascending
  CMatrix vecs;                 // normalized eigenvectors as columns
  bool fallback = false;        // degenerate: took the eigenframe instead
};
ExactEigs exact_eigs_general(double r, double s, double omega_theta, double omega_phi);

// Exact propagator psi(t) = U0(x(t)) exp(-i H' t) U0(x0)^dagger psi(0).
CMatrix exact_propagator(const HelixSpec& h, const ExactEigs& e, double t);

struct TrackingSample {
  double t = 0;
  double dFS_adiabatic = 0;  // exact plane vs instantaneous ground plane
  double dFS_initial = 0;    // exact plane vs the plane at t = 0
  HolonomyResult holonomy;   // of the exact plane path
};
// Uniform grid of `samples` points on [0, t_max]; `steps` transport steps in
// total, rounded up to a multiple of samples - 1.
std::vector<TrackingSample> exact_plane_tracking(const HelixSpec& h, double t_max, long samples,
                                                 long steps);

// Appendix-style constant-vector frames: when omega_phi = 0, omega_theta = 0 or
// omega_theta = omega_phi, returns the ground frame at x(t) whose first
// column does not move along the helix.
std::optional<CMatrix> adapted_basis_case(const HelixSpec& h, double t);

}  // namespace holo::three
