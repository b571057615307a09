#include "holo/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace holo {

CMatrix Geodesic::frame_at(double tau) const {
  CMatrix f(v0_frame.rows(), v0_frame.cols());
  for (Eigen::Index j = 0; j < v0_frame.cols(); ++j) {
    const double w = omega(j);
    if (w == 0.0) {
      f.col(j) = v0_frame.col(j);
    } else {
      f.col(j) = std::cos(w * tau) * v0_frame.col(j) + (std::sin(w * tau) / w) * v0dot_frame.col(j);
    }
  }
  return f;
}

PlaneSampler Geodesic::sampler() const {
  return [g = *this](double tau) { return g.at(tau); };
}

Geodesic shortest_geodesic(const NPlane& V, const NPlane& W) {
  const std::vector<int> plus(V.dim(), 1), zero(V.dim(), 0);
  return geodesic_family(V, W, plus, zero);
}

double geodesic_length(const Geodesic& g) { return g.omega.norm(); }

double path_length(const PlaneSampler& path, long N) {
  if (N < 2) throw PreconditionError("path_length: N must be at least 2");
  double total = 0;
  CMatrix prev = path(0.0).projector();
  for (long k = 1; k <= N; ++k) {
    CMatrix cur = path(static_cast<double>(k) / static_cast<double>(N)).projector();
    total += (cur - prev).norm();
    prev = std::move(cur);
  }
  return total / std::numbers::sqrt2;
}

std::optional<bool> is_simple(const PlaneSampler& path, long N, double tol) {
  const Teletransporter t = teletransporter(path(0.0), path(1.0));
  if (t.partial) return std::nullopt;
  return (continuous_transport(path, N) - t.matrix).norm() <= tol;
}

Geodesic geodesic_family(const NPlane& V, const NPlane& W, const std::vector<int>& signs,
                         const std::vector<int>& windings, const CMatrix& directions) {
  const int n = V.dim(), d = V.ambient();
  if (static_cast<int>(signs.size()) != n || static_cast<int>(windings.size()) != n)
    throw PreconditionError("geodesic_family: need one sign and one winding per basis vector");

  const PrincipalStructure ps = principal_structure(V, W);
  Geodesic g;
  g.omega = RVector::Zero(n);
  g.v0_frame.resize(d, n);
  g.v0dot_frame = CMatrix::Zero(d, n);
  g.signs = signs;

  int j = 0;
  Eigen::Index next_dir = 0;
  for (const PrincipalBlock& b : ps.blocks) {
    const bool shared = b.sigma > 0 && 1.0 - b.sigma * b.sigma <= kClusterTol;
    for (int l = 0; l < b.multiplicity(); ++l, ++j) {
      const int eps = signs[j];
      const int k = windings[j];
      if (eps != 1 && eps != -1) throw PreconditionError("geodesic_family: signs must be +1 or -1");
      if (k < 0) throw PreconditionError("geodesic_family: windings are nonnegative");
      const CVector v = b.v_frame.col(l);
      const CVector w = b.w_frame.col(l);
      g.v0_frame.col(j) = v;
      if (shared) {
        // v is its own image; the winding number fixes both omega and the sign.
        if ((k % 2 == 0 ? 1 : -1) != eps)
          throw PreconditionError("geodesic_family: on a shared direction the sign must be (-1)^k");
        if (k == 0) continue;
        if (next_dir >= directions.cols())
          throw PreconditionError("geodesic_family: missing velocity direction for winding");
        const CVector u = directions.col(next_dir++);
        g.omega(j) = k * std::numbers::pi;
        g.v0dot_frame.col(j) = g.omega(j) * u;
        continue;
      }
      if (k != 0)
        throw PreconditionError("geodesic_family: windings are only defined on V n W directions");
      if (b.sigma == 0.0 && eps == -1)
        throw PreconditionError("geodesic_family: sign -1 needs an angle below pi/2");
      const double c = eps * b.sigma;
      const double om = std::acos(std::clamp(c, -1.0, 1.0));
      const CVector u = (eps * w - c * v) / std::sin(om);
      g.omega(j) = om;
      g.v0dot_frame.col(j) = om * u;
    }
  }
  if (next_dir != directions.cols())
    throw PreconditionError("geodesic_family: unused velocity directions");

  int moving = 0;
  for (int i = 0; i < n; ++i) moving += g.omega(i) > 0;
  if (moving > d - n)
    throw PreconditionError("geodesic_family: " + std::to_string(moving) +
                            " moving directions exceed the " + std::to_string(d - n) +
                            " available orthogonal slots");

  // Initial conditions: <v|v> = 1, <v|vdot> = 0, <vdot_j|vdot_k> = omega_j^2 delta_jk.
  const CMatrix gram = g.v0_frame.adjoint() * g.v0_frame;
  const CMatrix cross = g.v0_frame.adjoint() * g.v0dot_frame;
  const CMatrix vel = g.v0dot_frame.adjoint() * g.v0dot_frame;
  const CMatrix om2 = g.omega.array().square().matrix().cast<cplx>().asDiagonal();
  const double defect = (gram - CMatrix::Identity(n, n)).norm() + cross.norm() + (vel - om2).norm();
  if (defect > 1e-9)
    throw PreconditionError("geodesic_family: initial conditions violated (defect " +
                            std::to_string(defect) + "); check the supplied directions");
  return g;
}

}  // namespace holo
