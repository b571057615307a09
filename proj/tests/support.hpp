#pragma once

#include <random>

#include "doctest.h"
#include "holo/linalg.hpp"

namespace testing {

using holo::CMatrix;
using holo::CVector;
using holo::cplx;

inline std::mt19937_64 rng(unsigned long seed) { return std::mt19937_64(seed); }

inline double dist(const CMatrix& a, const CMatrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return (a - b).norm();
}

inline CMatrix diag(std::initializer_list<cplx> d) {
  CMatrix m = CMatrix::Zero(static_cast<int>(d.size()), static_cast<int>(d.size()));
  int k = 0;
  for (cplx x : d) m(k, k) = x, ++k;
  return m;
}

inline CMatrix proj(const CMatrix& frame) { return frame * frame.adjoint(); }

}  // namespace testing
