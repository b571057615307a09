#include "holo/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace holo {

double wrap_angle(double x) {
  constexpr double pi = std::numbers::pi;
  double y = std::remainder(x, 2 * pi);
  if (y <= -pi) y += 2 * pi;
  return y;
}

double circular_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

std::vector<double> eigen_phases(const CMatrix& M, double min_modulus) {
  Eigen::ComplexEigenSolver<CMatrix> es(M, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const cplx z = es.eigenvalues()(i);
    if (std::abs(z) > min_modulus) out.push_back(wrap_angle(std::arg(z)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<double>> phase_tracks(const std::vector<std::vector<double>>& samples) {
  std::vector<std::vector<double>> tracks;
  std::vector<double> prev;
  for (const auto& cur : samples) {
    if (prev.size() != cur.size() || prev.empty()) {
      tracks.push_back(cur);
      prev = cur;
      continue;
    }
    // Greedy assignment is enough for n <= a handful of phases.
    std::vector<double> next(prev.size());
    std::vector<bool> used(cur.size(), false);
    for (std::size_t k = 0; k < prev.size(); ++k) {
      std::size_t best = 0;
      double bd = 1e300;
      for (std::size_t m = 0; m < cur.size(); ++m) {
        if (used[m]) continue;
        const double d = circular_distance(cur[m], prev[k]);
        if (d < bd) bd = d, best = m;
      }
      used[best] = true;
      next[k] = prev[k] + wrap_angle(cur[best] - prev[k]);
    }
    tracks.push_back(next);
    prev = next;
  }
  return tracks;
}

}  // namespace holo
