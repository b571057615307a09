#include "holo/transport.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "holo/phase.hpp"
#include "transport_detail.hpp"

namespace holo {

using detail::kChunk;
using detail::ParallelErrors;

void validate(const DiscretePath& path) {
  if (path.planes.size() < 2) throw PreconditionError("DiscretePath: need at least two planes");
  const NPlane& p0 = path.planes.front();
  for (const auto& p : path.planes)
    if (p.ambient() != p0.ambient() || p.dim() != p0.dim())
      throw DimensionError("DiscretePath: inconsistent plane dimensions");
  if (path.closed && (path.planes.back().projector() - p0.projector()).norm() > 1e-9)
    throw PreconditionError("DiscretePath: closed path does not end where it starts");
}

Transport discrete_transport(const DiscretePath& path) {
  validate(path);
  const int n = path.planes.front().dim();
  Transport out{CMatrix::Identity(n, n), false, n};
  for (std::size_t a = 1; a < path.planes.size(); ++a) {
    const Teletransporter t = teletransporter(path.planes[a - 1], path.planes[a]);
    out.matrix = t.matrix * out.matrix;
    out.partial = out.partial || t.partial;
    out.rank = std::min(out.rank, t.rank);
  }
  return out;
}

CMatrix continuous_transport(const PlaneSampler& path, long N) {
  if (N < 2) throw PreconditionError("continuous_transport: N must be at least 2");
  const int n = path(0.0).dim();
  const long chunks = (N + kChunk - 1) / kChunk;
  std::vector<CMatrix> part(chunks);
  ParallelErrors errors;

#pragma omp parallel for schedule(static)
  for (long c = 0; c < chunks; ++c) {
    errors.run([&] {
      const long a0 = c * kChunk + 1;
      const long a1 = std::min(N, (c + 1) * kChunk);
      CMatrix prev = path(detail::grid(a0 - 1, N)).frame();
      CMatrix acc = CMatrix::Identity(n, n);
      for (long a = a0; a <= a1; ++a) {
        CMatrix cur = path(detail::grid(a, N)).frame();
        acc = (cur.adjoint() * prev) * acc;
        prev = std::move(cur);
      }
      part[c] = std::move(acc);
    });
  }
  errors.rethrow();

  CMatrix total = CMatrix::Identity(n, n);
  for (const auto& p : part) total = p * total;
  return total;
}

HolonomyResult holonomy_from_bargmann(const CMatrix& B, long steps) {
  PolarFactors p;
  bool shaky = false;
  try {
    p = polar_decompose(B, kPlaneRankTol);
  } catch (const NumericalInstability&) {
    // A singular value barely above the cut: treat that direction as lost.
    p = polar_decompose(B, 1e-6);
    shaky = true;
  }
  HolonomyResult h;
  h.matrix = p.Ustar;
  h.rank = p.rank;
  h.partial = shaky || p.rank < B.rows();
  h.phases = eigen_phases(p.Ustar);
  h.steps_used = steps;
  return h;
}

HolonomyResult holonomy(const PlaneSampler& path, long N) {
  const CMatrix S = continuous_transport(path, N);
  const CMatrix f0 = path(0.0).frame();
  const CMatrix fN = path(1.0).frame();
  return holonomy_from_bargmann(f0.adjoint() * fN * S, N);
}

HolonomyResult holonomy(const DiscretePath& path) {
  const Transport t = discrete_transport(path);
  const Teletransporter close = teletransporter(path.planes.back(), path.planes.front());
  HolonomyResult h =
      holonomy_from_bargmann(close.matrix * t.matrix, static_cast<long>(path.planes.size()) - 1);
  h.partial = h.partial || t.partial || close.partial;
  h.rank = std::min({h.rank, t.rank, close.rank});
  return h;
}

std::vector<HolonomyResult> intermediate_holonomies(const PlaneSampler& path, long N) {
  if (N < 2) throw PreconditionError("intermediate_holonomies: N must be at least 2");
  std::vector<CMatrix> frames(N + 1);
  ParallelErrors errors;

#pragma omp parallel for schedule(static)
  for (long a = 0; a <= N; ++a) errors.run([&] { frames[a] = path(detail::grid(a, N)).frame(); });
  errors.rethrow();

  const int n = static_cast<int>(frames[0].cols());
  const long chunks = (N + kChunk - 1) / kChunk;
  // local[a]: product of the overlaps from the start of a's chunk up to a
  std::vector<CMatrix> local(N + 1);
  local[0] = CMatrix::Identity(n, n);

#pragma omp parallel for schedule(static)
  for (long c = 0; c < chunks; ++c) {
    const long a0 = c * kChunk + 1;
    const long a1 = std::min(N, (c + 1) * kChunk);
    CMatrix acc = CMatrix::Identity(n, n);
    for (long a = a0; a <= a1; ++a) {
      acc = (frames[a].adjoint() * frames[a - 1]) * acc;
      local[a] = acc;
    }
  }

  // prefix[c]: everything before chunk c
  std::vector<CMatrix> prefix(chunks + 1);
  prefix[0] = CMatrix::Identity(n, n);
  for (long c = 0; c < chunks; ++c) {
    const long a1 = std::min(N, (c + 1) * kChunk);
    prefix[c + 1] = local[a1] * prefix[c];
  }

  std::vector<HolonomyResult> out(N + 1);
  const CMatrix f0h = frames[0].adjoint();
#pragma omp parallel for schedule(static)
  for (long j = 0; j <= N; ++j) {
    errors.run([&] {
      const CMatrix S = j == 0 ? CMatrix::Identity(n, n) : CMatrix(local[j] * prefix[(j - 1) / kChunk]);
      out[j] = holonomy_from_bargmann(f0h * frames[j] * S, j);
    });
  }
  errors.rethrow();
  return out;
}

GaugeSample gauge_field(const FrameField& frames, double lambda, double h) {
  if (!(h > 0)) throw PreconditionError("gauge_field: step must be positive");
  const CMatrix V = frames(lambda);
  const CMatrix dV = (frames(lambda + h) - frames(lambda - h)) / (2 * h);
  const CMatrix A = I * (V.adjoint() * dV);
  return GaugeSample{lambda, 0.5 * (A + A.adjoint())};
}

CMatrix path_ordered_exp(const MatrixField& A, double a, double b, long N) {
  if (N < 2) throw PreconditionError("path_ordered_exp: N must be at least 2");
  const double step = (b - a) / static_cast<double>(N);
  CMatrix out;
  for (long k = 0; k < N; ++k) {
    const double mid = a + (static_cast<double>(k) + 0.5) * step;
    const CMatrix E = expm_hermitian(A(mid), I * step);
    out = k == 0 ? E : CMatrix(E * out);
  }
  return out;
}

double simon_mukunda_phase(const VectorField& v, long N) {
  if (N < 2) throw PreconditionError("simon_mukunda_phase: N must be at least 2");
  std::vector<CVector> vs(N + 1);
  for (long k = 0; k <= N; ++k) {
    vs[k] = v(detail::grid(k, N));
    if (std::abs(vs[k].norm() - 1.0) > 1e-8)
      throw PreconditionError("simon_mukunda_phase: sample is not unit-norm");
  }
  const cplx ends = vs[0].dot(vs[N]);
  if (std::abs(ends) < 1e-12) throw UndefinedPhase("simon_mukunda_phase: endpoints are orthogonal");
  double accumulated = 0;
  for (long k = 0; k < N; ++k) accumulated += std::arg(vs[k].dot(vs[k + 1]));
  return std::arg(ends) - accumulated;
}

double bargmann_phase(const std::vector<CVector>& vectors) {
  if (vectors.empty()) throw PreconditionError("bargmann_phase: empty sequence");
  cplx prod = 1.0;
  const std::size_t m = vectors.size();
  for (std::size_t k = 0; k < m; ++k) {
    const CVector& a = vectors[(k + 1) % m];
    const CVector& b = vectors[k];
    // <v_{k+1}|v_k>, wrapping from the last back to the first
    const cplx o = a.dot(b);
    if (std::abs(o) <= 1e-12 * a.norm() * b.norm())
      throw UndefinedPhase("bargmann_phase: consecutive vectors are orthogonal");
    prod *= o / std::abs(o);
  }
  return wrap_angle(std::arg(prod));
}

}  // namespace holo
