#include "holo/threestate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holo/phase.hpp"

namespace holo::three {

namespace {

constexpr double pi = std::numbers::pi;

double sq(double x) { return x * x; }

cplx expi(double a) { return std::polar(1.0, a); }

// 1 + r^-2 e^{i dph} + s^-2 e^{i dth}; proportional to <1(x)|1(x')> conjugated.
cplx pancharatnam_sum(double r, double s, double dtheta, double dphi) {
  return 1.0 + expi(dphi) / sq(r) + expi(dtheta) / sq(s);
}

}  // namespace

TorusPoint HelixSpec::at(double t) const {
  return TorusPoint{r, s, theta0 + omega_theta * t, phi0 + omega_phi * t};
}

double n1(double r, double s) { return std::sqrt(sq(r) + sq(s) + sq(r * s)); }

double n2(double r, double s, double dtheta, double dphi) {
  return 2.0 * std::sqrt(sq(r * std::sin(dtheta / 2)) + sq(s * std::sin(dphi / 2)) +
                         sq(std::sin((dtheta - dphi) / 2)));
}

DegeneracyResult degeneracy_complete(const CouplingTriple& k) {
  DegeneracyResult out;
  if (k.alpha == 0.0 || k.beta == 0.0 || k.gamma == 0.0) {
    out.violated = "all couplings must be nonzero";
    return out;
  }
  const cplx prod = k.alpha * k.beta * k.gamma;
  if (std::abs(prod.imag()) > 1e-12 * std::abs(prod)) {
    out.violated = "alpha*beta*gamma is not real (Im = " + std::to_string(prod.imag()) + ")";
    return out;
  }
  const cplx ta = k.beta * k.gamma / std::conj(k.alpha);
  const cplx tb = k.gamma * k.alpha / std::conj(k.beta);
  const cplx tc = k.alpha * k.beta / std::conj(k.gamma);
  out.accepted = true;
  out.E2 = -(ta + tb + tc).real() / 3.0;
  out.a = out.E2 + ta.real();
  out.b = out.E2 + tb.real();
  out.c = out.E2 + tc.real();
  out.E1 = out.E2 + predicted_gap(k);
  return out;
}

double predicted_gap(const CouplingTriple& k) {
  const cplx prod = k.alpha * k.beta * k.gamma;
  return (1.0 / std::norm(k.alpha) + 1.0 / std::norm(k.beta) + 1.0 / std::norm(k.gamma)) *
         prod.real();
}

CMatrix assemble_hamiltonian(const CouplingTriple& k, double a, double b, double c) {
  CMatrix H(3, 3);
  H << a, k.gamma, std::conj(k.beta),
       std::conj(k.gamma), b, k.alpha,
       k.beta, std::conj(k.alpha), c;
  return H;
}

CouplingTriple couplings(const TorusPoint& x) {
  return CouplingTriple{x.r * expi(x.theta), x.s * expi(-x.phi), expi(x.phi - x.theta)};
}

double minimal_polynomial_residual(const CMatrix& H, double E1, double E2) {
  if (H.rows() != 3 || H.cols() != 3) throw DimensionError("minimal_polynomial_residual: need 3x3");
  const CMatrix Id = CMatrix::Identity(3, 3);
  return ((H - E1 * Id) * (H - E2 * Id)).norm();
}

CMatrix H0(double r, double s) {
  CMatrix H(3, 3);
  H << s / r, 1.0, s,
       1.0, r / s, r,
       s, r, r * s;
  return H;
}

CMatrix U0(double theta, double phi) {
  CMatrix U = CMatrix::Zero(3, 3);
  U(0, 0) = expi(phi);
  U(1, 1) = expi(theta);
  U(2, 2) = 1.0;
  return U;
}

CMatrix hamiltonian(const TorusPoint& x) {
  const CMatrix U = U0(x.theta, x.phi);
  return U * H0(x.r, x.s) * U.adjoint();
}

Eigenframe eigenframe(const TorusPoint& x) {
  const double r = x.r, s = x.s, N1 = n1(r, s);
  if (!(r > 0 && s > 0)) throw PreconditionError("eigenframe: r and s must be positive");
  const cplx ep = expi(x.phi), et = expi(x.theta);
  Eigenframe f;
  f.E1 = sq(N1) / (r * s);
  f.excited.resize(3);
  f.excited << ep / r, et / s, 1.0;
  f.excited *= r * s / N1;
  f.ground.resize(3, 2);
  const double k1 = std::sqrt(1 + sq(r));
  f.ground.col(0) << r * ep / k1, 0.0, -1.0 / k1;
  f.ground.col(1) << r * ep, -(1 + sq(r)) * s * et, sq(r);
  f.ground.col(1) /= N1 * k1;
  return f;
}

NPlane ground_plane(const TorusPoint& x) { return NPlane(eigenframe(x).ground); }

TorusGauge torus_gauge(double r, double s) {
  const double N1 = n1(r, s);
  TorusGauge g;
  g.A_theta = CMatrix::Zero(2, 2);
  g.A_theta(1, 1) = -(1 + sq(r)) * sq(s) / sq(N1);
  g.A_phi.resize(2, 2);
  g.A_phi << 1.0, 1.0 / N1, 1.0 / N1, 1.0 / sq(N1);
  g.A_phi *= -sq(r) / (1 + sq(r));
  return g;
}

HelixRotation helix_rotation(const HelixSpec& h) {
  const double r = h.r, s = h.s, wt = h.omega_theta, wp = h.omega_phi;
  const double N1s = sq(r) + sq(s) + sq(r * s), N1 = std::sqrt(N1s);
  const TorusGauge g = torus_gauge(r, s);
  HelixRotation out;
  out.A = g.A_theta * wt + g.A_phi * wp;
  out.zeta = (sq(s) * (1 + sq(r)) * wt + sq(r) * (1 + sq(s)) * wp) / (2 * N1s);
  out.N3 = std::sqrt(sq(sq(s) * (1 + sq(r)) * wt - sq(r) * (1 + sq(s)) * wp) +
                     4 * sq(r * s) * wt * wp);
  out.Omega = out.N3 / N1s;
  if (out.N3 > 0) {
    const double den = (1 + sq(r)) * out.N3;
    out.u = {2 * sq(r) * N1 * wp / den, 0.0,
             (sq(r) * (N1s - 1) * wp - sq(1 + sq(r)) * sq(s) * wt) / den};
  }
  return out;
}

CMatrix helix_transport(const HelixSpec& h, double t) {
  const HelixRotation hr = helix_rotation(h);
  const double a = hr.Omega * t / 2;
  CMatrix usig(2, 2);
  usig << hr.u[2], cplx(hr.u[0], -hr.u[1]), cplx(hr.u[0], hr.u[1]), -hr.u[2];
  const CMatrix R = std::cos(a) * CMatrix::Identity(2, 2) - I * std::sin(a) * usig;
  return expi(-hr.zeta * t) * R;
}

Teletransporter analytic_teletransporter(const TorusPoint& from, const TorusPoint& to) {
  if (from.r != to.r || from.s != to.s)
    throw PreconditionError("analytic_teletransporter: points must share the torus (r, s)");
  const double r = to.r, s = to.s, N1 = n1(r, s);
  const Eigenframe et = eigenframe(to), ef = eigenframe(from);
  const double dth = from.theta - to.theta, dph = from.phi - to.phi;
  const double sin_m = r * s * n2(r, s, dth, dph) / sq(N1);
  NPlane src(ef.ground), dst(et.ground);

  if (sin_m <= 1e-12) {
    // Same plane: Gamma is the identity map, read in the two frames.
    return Teletransporter{src, dst, et.ground.adjoint() * ef.ground, false, 2};
  }
  const CVector& one = et.excited;
  const CVector& onep = ef.excited;
  const CVector plus = (onep.dot(et.ground.col(1)) * et.ground.col(0) -
                        onep.dot(et.ground.col(0)) * et.ground.col(1)) / sin_m;
  const CVector minus = et.ground * (et.ground.adjoint() * onep) / sin_m;
  const CVector minusp = ef.ground * (ef.ground.adjoint() * one) / sin_m;

  const cplx z = pancharatnam_sum(r, s, dth, dph);
  const double sigma_m = sq(r * s) / sq(N1) * std::abs(z);
  CMatrix G = plus * plus.adjoint();
  bool partial = false;
  int rank = 2;
  if (sigma_m > kPlaneRankTol) {
    const double delta_m = pi - std::arg(z);
    G += expi(delta_m) * minus * minusp.adjoint();
  } else {
    partial = true;
    rank = 1;
  }
  return Teletransporter{src, dst, et.ground.adjoint() * G * ef.ground, partial, rank};
}

std::vector<std::pair<double, double>> complex_triangle(double a, double b) {
  if (!(a > 0 && b > 0)) throw PreconditionError("complex_triangle: a and b must be positive");
  const double slack = 1e-12 * std::max({a, b, 1.0});
  if (std::abs(a - b) > 1 + slack || a + b < 1 - slack) return {};
  const double ca = std::clamp((sq(b) - sq(a) - 1) / (2 * a), -1.0, 1.0);
  const double cb = std::clamp((sq(a) - sq(b) - 1) / (2 * b), -1.0, 1.0);
  const double alpha = std::acos(ca);
  const double beta = -std::acos(cb);
  if (std::abs(std::sin(alpha)) < 1e-9 && std::abs(std::sin(beta)) < 1e-9)
    return {{wrap_angle(alpha), wrap_angle(beta)}};
  return {{alpha, beta}, {-alpha, -beta}};
}

bool torus_pair_orthogonal(double r, double s, double dtheta, double dphi, double tol) {
  for (const auto& [al, be] : complex_triangle(1 / sq(r), 1 / sq(s)))
    if (circular_distance(al, dphi) <= tol && circular_distance(be, dtheta) <= tol) return true;
  return false;
}

std::function<TorusPoint(double)> parameter_geodesic(const TorusPoint& from, const TorusPoint& to) {
  if (from.r != to.r || from.s != to.s)
    throw PreconditionError("parameter_geodesic: points must share the torus (r, s)");
  const double r = from.r, s = from.s, N1 = n1(r, s);
  const double dth = from.theta - to.theta, dph = from.phi - to.phi;
  const double N2 = n2(r, s, dth, dph);
  if (N2 <= 1e-12) return [from](double) { return from; };

  const double delta = std::arg(pancharatnam_sum(r, s, dth, dph));
  const double tol = 1e-9;
  if (circular_distance(delta, 0) <= tol)
    throw UnsupportedBranch("parameter_geodesic: delta = 0 (mod 2pi) is not covered");
  if (circular_distance(delta, dth) <= tol)
    throw UnsupportedBranch("parameter_geodesic: delta = delta_theta (mod 2pi) is not covered");
  if (circular_distance(delta, dph) <= tol)
    throw UnsupportedBranch("parameter_geodesic: delta = delta_phi (mod 2pi) is not covered");

  const double phim = std::asin(std::min(1.0, r * s * N2 / sq(N1)));
  return [=](double tau) {
    const double a = std::sin(phim * (1 - tau)), b = std::sin(phim * tau);
    const cplx A1 = a * expi(from.phi) + b * expi(to.phi + delta);
    const cplx A2 = a * expi(from.theta) + b * expi(to.theta + delta);
    const cplx A3 = a + b * expi(delta);
    TorusPoint x;
    x.r = r * std::abs(A3 / A1);
    x.s = s * std::abs(A3 / A2);
    // keep the angles on the branch of the starting point
    x.theta = from.theta + wrap_angle(std::arg(A2 / A3) - from.theta);
    x.phi = from.phi + wrap_angle(std::arg(A1 / A3) - from.phi);
    return x;
  };
}

HolonomyResult helix_holonomy_analytic(const HelixSpec& h, double t) {
  const Teletransporter tel = analytic_teletransporter(h.at(t), h.at(0));
  HolonomyResult out;
  out.matrix = tel.matrix * helix_transport(h, t);
  out.partial = tel.partial;
  out.rank = tel.rank;
  out.phases = eigen_phases(out.matrix);
  return out;
}

double helix_cos_chi(const HelixSpec& hs, double t) {
  const double r = hs.r, s = hs.s, wt = hs.omega_theta, wp = hs.omega_phi;
  const HelixRotation hr = helix_rotation(hs);
  const double N1s = sq(n1(r, s));
  const double xi = 0.5 * std::arg(pancharatnam_sum(r, s, wt * t, wp * t));
  const double N2 = n2(r, s, wt * t, wp * t);

  // One half of C(t), S(t); the other half follows from (r, w_th) <-> (s, w_ph).
  auto half = [&](double r, double s, double wt, double wp, double& C, double& S) {
    const double sum = (wt + wp) / 2 * t, dif = (wt - wp) / 2 * t, odd = (3 * wt - wp) / 2 * t;
    C += sq(r) * std::cos(sum + xi) - 2 * sq(r) * std::cos(dif - xi) - std::cos(sum - xi) +
         (1 + sq(r)) * std::cos(odd - xi);
    S += sq(s) * (N1s - sq(sq(r))) * wt * std::sin(sum + xi) -
         2 * sq(r) * ((N1s - sq(r)) * wt - (N1s + sq(s)) * wp) * std::sin(dif - xi) -
         2 * (N1s - sq(r)) * wt * std::sin(sum - xi) +
         (sq(s) * sq(1 + sq(r)) * wt - sq(r) * (N1s - 1) * wp) * std::sin(odd - xi);
  };
  double C = 0, S = 0;
  half(r, s, wt, wp, C, S);
  half(s, r, wp, wt, C, S);
  const double a = hr.Omega * t / 2;
  const double sine = hr.N3 > 0 ? S / hr.N3 * std::sin(a) : 0.0;
  return (C * std::cos(a) + sine) / sq(N2);
}

std::array<double, 2> helix_phases_closed_form(const HelixSpec& h, double t) {
  const HelixRotation hr = helix_rotation(h);
  std::array<double, 2> out;
  if (n2(h.r, h.s, h.omega_theta * t, h.omega_phi * t) < 1e-9) {
    out = {wrap_angle((-hr.Omega / 2 - hr.zeta) * t), wrap_angle((hr.Omega / 2 - hr.zeta) * t)};
  } else {
    const double xi =
        0.5 * std::arg(pancharatnam_sum(h.r, h.s, h.omega_theta * t, h.omega_phi * t));
    const double base = pi + ((h.omega_theta + h.omega_phi) / 2 - hr.zeta) * t - xi;
    const double chi = std::acos(std::clamp(helix_cos_chi(h, t), -1.0, 1.0));
    out = {wrap_angle(base - chi), wrap_angle(base + chi)};
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::array<double, 2> frozen_regime_phases(double r, double omega0, double t) {
  const double k = std::sqrt(2 + sq(r));
  const double c = omega0 * t;
  const double g = std::arg(cplx(1 + (1 + sq(r)) * std::cos(c), r * k * std::sin(c))) - r * c / k;
  std::array<double, 2> out{wrap_angle(g), wrap_angle(-g)};
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<double, double> frozen_window(double r, double omega0) {
  if (!(r > 0 && r < std::numbers::sqrt2))
    throw PreconditionError("frozen_window: needs 0 < r < sqrt(2)");
  const double t1 = std::acos(-sq(r) / 2) / omega0;
  return {t1, 2 * pi / omega0 - t1};
}

std::optional<CMatrix> adapted_basis_case(const HelixSpec& h, double t) {
  const double scale = std::max(std::abs(h.omega_theta), std::abs(h.omega_phi));
  const double tol = 1e-12 * scale;
  const TorusPoint x = h.at(t);
  const double r = x.r, s = x.s, N1 = n1(r, s);
  if (std::abs(h.omega_phi) <= tol) return eigenframe(x).ground;
  CMatrix f(3, 2);
  if (std::abs(h.omega_theta) <= tol) {
    const double k = std::sqrt(1 + sq(s));
    f.col(0) << 0.0, s * expi(x.theta) / k, -1.0 / k;
    f.col(1) << r * (1 + sq(s)) * expi(x.phi), -s * expi(x.theta), -sq(s);
    f.col(1) /= N1 * k;
    return f;
  }
  if (std::abs(h.omega_theta - h.omega_phi) <= tol) {
    const double k = std::sqrt(sq(r) + sq(s));
    f.col(0) << r / k, -s * expi(x.theta - x.phi) / k, 0.0;
    f.col(1) << r * sq(s) * expi(x.phi), sq(r) * s * expi(x.theta), -(sq(r) + sq(s));
    f.col(1) /= N1 * k;
    return f;
  }
  return std::nullopt;
}

}  // namespace holo::three
