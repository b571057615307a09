#include "holo/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace holo {

namespace {

void require_compatible(const NPlane& V, const NPlane& W, const char* what) {
  if (V.ambient() != W.ambient() || V.dim() != W.dim())
    throw DimensionError(std::string(what) + ": planes differ in ambient dimension or rank");
}

double safe_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

// Extends the orthonormal columns of `chosen` (n x k) to an orthonormal basis
// of C^n, seeding with e_1, e_2, ... in order. Returns only the new columns.
CMatrix complete_basis(const CMatrix& chosen, Eigen::Index n) {
  const Eigen::Index want = n - chosen.cols();
  CMatrix basis(n, chosen.cols() + want);
  basis.leftCols(chosen.cols()) = chosen;
  Eigen::Index have = chosen.cols();
  for (Eigen::Index k = 0; k < n && have < basis.cols(); ++k) {
    CVector x = CVector::Unit(n, k);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j = 0; j < have; ++j) x -= basis.col(j) * basis.col(j).dot(x);
    const double nx = x.norm();
    if (nx < 1e-6) continue;
    basis.col(have++) = x / nx;
  }
  return basis.rightCols(want);
}

}  // namespace

NPlane::NPlane(CMatrix frame) : frame_(std::move(frame)) {
  const Eigen::Index d = frame_.rows(), n = frame_.cols();
  if (n < 1 || n >= d)
    throw DimensionError("NPlane: need 1 <= n < d, got n=" + std::to_string(n) +
                         " d=" + std::to_string(d));
  const double defect = (frame_.adjoint() * frame_ - CMatrix::Identity(n, n)).norm();
  if (defect > 1e-10)
    throw PreconditionError("NPlane: frame is not orthonormal (defect " + std::to_string(defect) +
                            ")");
  projector_ = frame_ * frame_.adjoint();
}

NPlane NPlane::from_span(const CMatrix& vectors) {
  const Eigen::Index d = vectors.rows(), n = vectors.cols();
  if (n < 1 || n >= d) throw DimensionError("NPlane::from_span: need 1 <= n < d");
  Eigen::HouseholderQR<CMatrix> qr(vectors);
  const CMatrix R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  const double scale = vectors.norm();
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(R(i, i)) <= 1e-12 * scale)
      throw PreconditionError("NPlane::from_span: vectors are linearly dependent");
  CMatrix Q = qr.householderQ() * CMatrix::Identity(d, n);
  return NPlane(std::move(Q));
}

std::vector<double> PrincipalStructure::singular_values() const {
  std::vector<double> out;
  for (const auto& b : blocks)
    if (b.sigma > 0) out.push_back(b.sigma);
  return out;
}

std::vector<int> PrincipalStructure::multiplicities() const {
  std::vector<int> out;
  for (const auto& b : blocks) out.push_back(b.multiplicity());
  return out;
}

std::vector<double> PrincipalStructure::angles() const {
  std::vector<double> out;
  for (const auto& b : blocks) out.push_back(b.angle);
  return out;
}

std::vector<double> PrincipalStructure::cosines() const {
  std::vector<double> out;
  for (const auto& b : blocks) out.insert(out.end(), b.multiplicity(), b.sigma);
  return out;
}

CMatrix overlap_matrix(const CMatrix& frameW, const CMatrix& frameV) {
  if (frameW.rows() != frameV.rows() || frameW.cols() != frameV.cols())
    throw DimensionError("overlap_matrix: frame shapes differ");
  return frameW.adjoint() * frameV;
}

PrincipalStructure principal_structure(const NPlane& V, const NPlane& W) {
  require_compatible(V, W, "principal_structure");
  const int n = V.dim();
  const CMatrix M = overlap_matrix(W.frame(), V.frame());
  Eigen::JacobiSVD<CMatrix> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector s = svd.singularValues();
  const CMatrix& Y = svd.matrixV();

  int r = 0;
  while (r < n && s(r) > kPlaneRankTol) ++r;

  PrincipalStructure ps;
  ps.rank = r;

  // W-side coordinates of the paired vectors: M y / sigma.
  CMatrix Wc(n, r);
  for (int i = 0; i < r; ++i) Wc.col(i) = M * Y.col(i) / s(i);

  int i0 = 0;
  while (i0 < r) {
    int i1 = i0 + 1;
    while (i1 < r && s(i1 - 1) * s(i1 - 1) - s(i1) * s(i1) <= kClusterTol) ++i1;
    PrincipalBlock b;
    b.sigma = std::min(1.0, s.segment(i0, i1 - i0).mean());
    b.v_frame = V.frame() * Y.middleCols(i0, i1 - i0);
    b.w_frame = W.frame() * Wc.middleCols(i0, i1 - i0);
    // |w - v| = 2 sin(angle/2) for each pair; keeps small angles accurate
    if (b.sigma > 0.5) {
      double a = 0;
      for (Eigen::Index c = 0; c < b.v_frame.cols(); ++c)
        a += 2 * std::asin(std::min(1.0, 0.5 * (b.w_frame.col(c) - b.v_frame.col(c)).norm()));
      b.angle = a / static_cast<double>(b.v_frame.cols());
    } else {
      b.angle = safe_acos(b.sigma);
    }
    ps.blocks.push_back(std::move(b));
    i0 = i1;
  }
  if (r < n) {
    PrincipalBlock k;
    k.sigma = 0.0;
    k.angle = std::numbers::pi / 2;
    k.v_frame = V.frame() * complete_basis(Y.leftCols(r), n);
    k.w_frame = W.frame() * complete_basis(Wc, n);
    ps.blocks.push_back(std::move(k));
  }
  return ps;
}

Teletransporter teletransporter(const NPlane& V, const NPlane& W) {
  require_compatible(V, W, "teletransporter");
  const PolarFactors p = polar_decompose(overlap_matrix(W.frame(), V.frame()), kPlaneRankTol);
  return Teletransporter{V, W, p.Ustar, p.rank < V.dim(), p.rank};
}

bool is_anti_orthogonal(const NPlane& V, const NPlane& W, double tol) {
  require_compatible(V, W, "is_anti_orthogonal");
  Eigen::JacobiSVD<CMatrix> svd(overlap_matrix(W.frame(), V.frame()));
  return svd.singularValues().minCoeff() > tol;
}

double fubini_study_distance(const NPlane& V, const NPlane& W) {
  require_compatible(V, W, "fubini_study_distance");
  // acos(|det|) keeps only half the digits for close planes; there
  // 1 - prod cos(phi_j) comes from the sines, the singular values of (1 - P_W) V.
  const CMatrix off = V.frame() - W.projector() * V.frame();
  const RVector sines = Eigen::JacobiSVD<CMatrix>(off).singularValues();
  if (sines.squaredNorm() < 0.5) {
    double log_cos = 0;
    for (Eigen::Index j = 0; j < sines.size(); ++j) log_cos += 0.5 * std::log1p(-sines(j) * sines(j));
    const double one_minus_c = -std::expm1(log_cos);
    return 2 * std::asin(std::sqrt(0.5 * one_minus_c));
  }
  return safe_acos(std::abs(overlap_matrix(W.frame(), V.frame()).determinant()));
}

CVector hyperplane_normal(const NPlane& V) {
  const Eigen::Index d = V.ambient();
  if (V.dim() != d - 1) throw PreconditionError("hyperplane_normal: plane is not a hyperplane");
  Eigen::HouseholderQR<CMatrix> qr(V.frame());
  const CMatrix Q = qr.householderQ();
  return Q.col(d - 1);
}

PrincipalStructure hyperplane_structure(const NPlane& V, const NPlane& W) {
  require_compatible(V, W, "hyperplane_structure");
  const int d = V.ambient();
  if (V.dim() != d - 1)
    throw PreconditionError("hyperplane_structure: needs n = d - 1, got n=" +
                            std::to_string(V.dim()) + " d=" + std::to_string(d));
  const CVector nv = hyperplane_normal(V);
  const CVector nw = hyperplane_normal(W);
  const double sm = std::min(1.0, std::abs(nw.dot(nv)));

  PrincipalStructure ps;
  if (1.0 - sm * sm <= kClusterTol) {
    // Same hyperplane up to clustering: one block, Gamma is P_W restricted.
    PrincipalBlock b;
    // averaged the way principal_structure averages a cluster
    b.sigma = (d - 2 + sm) / (d - 1);
    b.angle = safe_acos(sm) / (d - 1);
    b.v_frame = V.frame();
    b.w_frame = W.projector() * V.frame();
    for (Eigen::Index j = 0; j < b.w_frame.cols(); ++j) b.w_frame.col(j).normalize();
    ps.blocks.push_back(std::move(b));
    ps.rank = d - 1;
    return ps;
  }

  // v_- is the direction of V farthest from W: P_V applied to W's normal.
  CVector vm = V.projector() * nw;
  vm.normalize();
  CMatrix inter(d, d - 2);
  {
    Eigen::Index have = 0;
    for (Eigen::Index k = 0; k < d - 1 && have < d - 2; ++k) {
      CVector x = V.frame().col(k);
      for (int pass = 0; pass < 2; ++pass) {
        x -= vm * vm.dot(x);
        for (Eigen::Index j = 0; j < have; ++j) x -= inter.col(j) * inter.col(j).dot(x);
      }
      const double nx = x.norm();
      if (nx < 1e-6) continue;
      inter.col(have++) = x / nx;
    }
  }
  if (d > 2) {
    PrincipalBlock b0;
    b0.sigma = 1.0;
    b0.angle = 0.0;
    b0.v_frame = inter;
    b0.w_frame = inter;
    ps.blocks.push_back(std::move(b0));
  }

  PrincipalBlock bm;
  if (sm > kPlaneRankTol) {
    bm.sigma = sm;
    bm.angle = safe_acos(sm);
    bm.v_frame = vm;
    CVector wm = W.projector() * vm;
    bm.w_frame = wm / wm.norm();
    ps.rank = d - 1;
  } else {
    bm.sigma = 0.0;
    bm.angle = std::numbers::pi / 2;
    bm.v_frame = vm;
    CVector wm = W.projector() * nv;
    bm.w_frame = wm / wm.norm();
    ps.rank = d - 2;
  }
  ps.blocks.push_back(std::move(bm));
  return ps;
}

}  // namespace holo
