#pragma once

#include <functional>
#include <vector>

#include "holo/grassmann.hpp"

namespace holo {

// lambda in [0,1] -> plane. Must be deterministic and safe to call from
// several threads at once. Frames need not vary smoothly.
using PlaneSampler = std::function<NPlane(double)>;
// lambda -> d x n frame, assumed smooth (gauge fields only).
using FrameField = std::function<CMatrix(double)>;
using MatrixField = std::function<CMatrix(double)>;
using VectorField = std::function<CVector(double)>;

struct DiscretePath {
  std::vector<NPlane> planes;
  bool closed = false;
};

// Throws if the path is too short, mixes dimensions, or claims to be closed
// while its end planes differ.
void validate(const DiscretePath& path);

struct Transport {
  CMatrix matrix;  // initial frame -> final frame
  bool partial = false;
  int rank = 0;    // smallest rank met along the way
};

struct HolonomyResult {
  CMatrix matrix;               // in the initial frame
  std::vector<double> phases;   // ascending, in (-pi, pi]
  bool partial = false;
  int rank = 0;
  long steps_used = 0;
};

struct GaugeSample {
  double lambda = 0;
  CMatrix A;
};

// Composition of the consecutive teletransporters.
Transport discrete_transport(const DiscretePath& path);

// prod_a S(V_a, V_{a-1}) over the uniform grid lambda_a = a/N, later factors
// on the left. Chunks of the product run in parallel; the chunk layout does not
// depend on the thread count, so results are reproducible.
CMatrix continuous_transport(const PlaneSampler& path, long N);

// Gamma_{V0 VN} composed with the transport along the path, unitarized by the
// polar step.
HolonomyResult holonomy(const PlaneSampler& path, long N);
HolonomyResult holonomy(const DiscretePath& path);

// Non-cyclic holonomies at every grid point j = 0..N, each from
// B_j = S(V_0, V_j) S_j with S_j the partial product up to j.
std::vector<HolonomyResult> intermediate_holonomies(const PlaneSampler& path, long N);

// Polar step and eigen-phases of a generalized Bargmann invariant B.
HolonomyResult holonomy_from_bargmann(const CMatrix& B, long steps);

// A = i V^dagger dV by central differences, then Hermitized.
GaugeSample gauge_field(const FrameField& frames, double lambda, double h);

// Ordered product of exp(i A(lambda_mid) dlambda) over [a, b].
CMatrix path_ordered_exp(const MatrixField& A, double a, double b, long N);

// arg<v(0)|v(1)> minus the accumulated phase sum_k arg<v_k|v_{k+1}>.
double simon_mukunda_phase(const VectorField& v, long N);

// arg(<v0|vN><vN|vN-1>...<v1|v0>)
double bargmann_phase(const std::vector<CVector>& vectors);

// Plain sequential versions of the parallel kernels, kept as references.
namespace serial {
CMatrix continuous_transport(const PlaneSampler& path, long N);
std::vector<HolonomyResult> intermediate_holonomies(const PlaneSampler& path, long N);
}  // namespace serial

}  // namespace holo
