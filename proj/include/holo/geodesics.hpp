#pragma once

#include <optional>
#include <vector>

#include "holo/transport.hpp"

namespace holo {

// v_j(tau) = cos(omega_j tau) v0_j + sin(omega_j tau) u_j, with u_j the unit
// initial velocity direction (v0dot_frame = u * diag(omega)).
struct Geodesic {
  RVector omega;
  CMatrix v0_frame;
  CMatrix v0dot_frame;
  std::vector<int> signs;

  CMatrix frame_at(double tau) const;
  NPlane at(double tau) const { return NPlane(frame_at(tau)); }
  // tau in [0,1] -> plane, for the transport routines
  PlaneSampler sampler() const;
};

// omega = principal angles, every sign +1.
Geodesic shortest_geodesic(const NPlane& V, const NPlane& W);

// (sum_j omega_j^2)^(1/2)
double geodesic_length(const Geodesic& g);

// Arc length from projector increments, sum_k ||P_{k+1} - P_k||_F / sqrt(2).
// The 1/sqrt(2) makes it the metric whose geodesic lengths are the angle sums
// above (tr(dP dP) is twice sum_j <dv_j|(1-P)|dv_j>).
double path_length(const PlaneSampler& path, long N);

// nullopt when the endpoints are not anti-orthogonal.
std::optional<bool> is_simple(const PlaneSampler& path, long N, double tol);

// General member of the family joining V to W. `signs` and `windings` are
// indexed by the adapted basis (principal blocks in descending cosine order).
// A nonzero winding is only allowed on a direction of V n W and needs a
// caller-supplied unit velocity direction, taken in order from the columns of
// `directions`.
Geodesic geodesic_family(const NPlane& V, const NPlane& W, const std::vector<int>& signs,
                         const std::vector<int>& windings, const CMatrix& directions = CMatrix());

}  // namespace holo
