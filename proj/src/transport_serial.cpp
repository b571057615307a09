#include "holo/transport.hpp"
#include "transport_detail.hpp"

namespace holo::serial {

CMatrix continuous_transport(const PlaneSampler& path, long N) {
  if (N < 2) throw PreconditionError("continuous_transport: N must be at least 2");
  CMatrix prev = path(0.0).frame();
  CMatrix acc = CMatrix::Identity(prev.cols(), prev.cols());
  for (long a = 1; a <= N; ++a) {
    CMatrix cur = path(detail::grid(a, N)).frame();
    acc = (cur.adjoint() * prev) * acc;
    prev = std::move(cur);
  }
  return acc;
}

std::vector<HolonomyResult> intermediate_holonomies(const PlaneSampler& path, long N) {
  if (N < 2) throw PreconditionError("intermediate_holonomies: N must be at least 2");
  const CMatrix f0 = path(0.0).frame();
  CMatrix prev = f0;
  CMatrix S = CMatrix::Identity(f0.cols(), f0.cols());
  std::vector<HolonomyResult> out;
  out.reserve(N + 1);
  out.push_back(holonomy_from_bargmann(S, 0));
  for (long j = 1; j <= N; ++j) {
    CMatrix cur = path(detail::grid(j, N)).frame();
    S = (cur.adjoint() * prev) * S;
    out.push_back(holonomy_from_bargmann(f0.adjoint() * cur * S, j));
    prev = std::move(cur);
  }
  return out;
}

}  // namespace holo::serial
