#include "holo/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace holo {

namespace {

void check_grid(double t_end, long steps, long stride) {
  if (steps < 1) throw PreconditionError("evolve: need at least one step");
  if (stride < 1) throw PreconditionError("evolve: stride must be positive");
  if (!std::isfinite(t_end)) throw PreconditionError("evolve: t_end must be finite");
}

EvolutionRecord run(const HamiltonianSampler& H, int dim, const CVector* psi0, double t_end,
                    long steps, long stride) {
  check_grid(t_end, steps, stride);
  EvolutionRecord rec;
  rec.step = t_end / static_cast<double>(steps);
  CMatrix U = CMatrix::Identity(dim, dim);
  auto snap = [&](long k) {
    rec.times.push_back(static_cast<double>(k) * rec.step);
    rec.propagators.push_back(U);
    if (psi0) rec.states.push_back(U * *psi0);
  };
  snap(0);
  for (long k = 0; k < steps; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * rec.step;
    const CMatrix h = H(mid);
    if (h.rows() != dim || h.cols() != dim) throw DimensionError("evolve: Hamiltonian has wrong size");
    U = expm_hermitian(h, -I * rec.step) * U;
    if ((k + 1) % stride == 0 || k + 1 == steps) snap(k + 1);
  }
  return rec;
}

}  // namespace

EvolutionRecord evolve(const HamiltonianSampler& H, const CVector& psi0, double t_end, long steps,
                       long stride) {
  if (std::abs(psi0.norm() - 1.0) > 1e-8) throw PreconditionError("evolve: psi0 must be unit-norm");
  return run(H, static_cast<int>(psi0.size()), &psi0, t_end, steps, stride);
}

EvolutionRecord evolve_operator(const HamiltonianSampler& H, int dim, double t_end, long steps,
                                long stride) {
  return run(H, dim, nullptr, t_end, steps, stride);
}

double invariant_residual(const PlaneTrajectory& P, const HamiltonianSampler& H, double t, double h) {
  if (!(h > 0)) throw PreconditionError("invariant_residual: step must be positive");
  const CMatrix Pt = P(t).projector();
  const CMatrix dP = (P(t + h).projector() - P(t - h).projector()) / (2 * h);
  const CMatrix Ht = H(t);
  return (I * dP - (Ht * Pt - Pt * Ht)).norm();
}

CMatrix reduced_evolution(const FrameField& frames, const HamiltonianSampler& H, double t_end,
                          long steps, double h) {
  if (steps < 1) throw PreconditionError("reduced_evolution: need at least one step");
  const double dt = t_end / static_cast<double>(steps);
  const int n = static_cast<int>(frames(0.0).cols());
  CMatrix out = CMatrix::Identity(n, n);
  for (long k = 0; k < steps; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * dt;
    const CMatrix V = frames(mid);
    const CMatrix A = gauge_field(frames, mid, h).A;
    CMatrix Om = V.adjoint() * H(mid) * V;
    Om = 0.5 * (Om + Om.adjoint());
    out = expm_hermitian(A - Om, I * dt) * out;
  }
  return out;
}

CMatrix picture_change(const CMatrix& Gamma, const CMatrix& Omega) {
  if (Gamma.rows() != Omega.rows() || Gamma.cols() != Omega.cols() || Gamma.rows() != Gamma.cols())
    throw DimensionError("picture_change: need square matrices of one size");
  if (unitarity_defect(Gamma) > 1e-8) throw PreconditionError("picture_change: Gamma is not unitary");
  return Gamma.adjoint() * Omega * Gamma;
}

CMatrix torsion_free_hamiltonian(const CMatrix& H, const NPlane& P) {
  if (H.rows() != P.ambient() || H.cols() != P.ambient())
    throw DimensionError("torsion_free_hamiltonian: dimensions differ");
  const CMatrix& p = P.projector();
  const CMatrix q = CMatrix::Identity(H.rows(), H.cols()) - p;
  return H - p * H * p - q * H * q;
}

double heisenberg_constancy(const std::function<CMatrix(double)>& invariant,
                            const EvolutionRecord& record) {
  if (record.propagators.size() != record.times.size())
    throw PreconditionError("heisenberg_constancy: record has no operator snapshots");
  const CMatrix I0 = invariant(record.times.front());
  double worst = 0;
  for (std::size_t k = 0; k < record.times.size(); ++k) {
    const CMatrix& U = record.propagators[k];
    worst = std::max(worst, (U.adjoint() * invariant(record.times[k]) * U - I0).norm());
  }
  return worst;
}

}  // namespace holo
