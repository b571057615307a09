#pragma once

#include <functional>
#include <string>
#include <vector>

#include "holo/transport.hpp"

// hbar = 1 throughout.
namespace holo {

// t -> Hermitian H(t). Safe for concurrent calls.
using HamiltonianSampler = std::function<CMatrix(double)>;
using PlaneTrajectory = std::function<NPlane(double)>;

struct EvolutionRecord {
  std::vector<double> times;
  std::vector<CMatrix> propagators;  // U(t_k), recorded every `stride` steps
  std::vector<CVector> states;       // U(t_k) psi0 when a state was evolved
  double step = 0;
  std::string scheme = "exponential-midpoint";
};

// U_{k+1} = exp(-i H(t_k + dt/2) dt) U_k on a uniform grid of `steps` steps.
// The caller picks steps; a sensible default is dt = (2 pi / ||H||) 1e-3.
EvolutionRecord evolve(const HamiltonianSampler& H, const CVector& psi0, double t_end, long steps,
                       long stride = 1);
EvolutionRecord evolve_operator(const HamiltonianSampler& H, int dim, double t_end, long steps,
                                long stride = 1);

// || i (P(t+h) - P(t-h)) / 2h - [H(t), P(t)] ||_F
double invariant_residual(const PlaneTrajectory& P, const HamiltonianSampler& H, double t, double h);

// Ordered product of exp(i (A(t) - Omega(t)) dt), Omega_jk = <v_j|H|v_k>, both
// taken at the step midpoints. A comes from central differences with step h.
CMatrix reduced_evolution(const FrameField& frames, const HamiltonianSampler& H, double t_end,
                          long steps, double h = 1e-6);

// Gamma^-1 Omega Gamma for unitary Gamma: the reduced Hamiltonian seen from the
// parallel-transported frame, so that the reduced evolution factors as Gamma Y
// with i dY/dt = Omega' Y.
CMatrix picture_change(const CMatrix& Gamma, const CMatrix& Omega);

// H - P H P - (1-P) H (1-P)
CMatrix torsion_free_hamiltonian(const CMatrix& H, const NPlane& P);

// max_k || U_k^dagger I(t_k) U_k - I(0) ||_F over the recorded snapshots.
double heisenberg_constancy(const std::function<CMatrix(double)>& invariant,
                            const EvolutionRecord& record);

}  // namespace holo
