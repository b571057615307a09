#include "holo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace holo {

namespace {

void require_square(const CMatrix& M, const char* what) {
  if (M.rows() != M.cols() || M.rows() == 0)
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
}

void fix_phase(CMatrix& Q) {
  for (Eigen::Index j = 0; j < Q.cols(); ++j) {
    const double top = Q.col(j).cwiseAbs().maxCoeff();
    if (top == 0.0) continue;
    Eigen::Index k = 0;
    while (std::abs(Q(k, j)) < top * (1.0 - 1e-12)) ++k;
    const cplx c = Q(k, j);
    Q.col(j) *= std::conj(c) / std::abs(c);
  }
}

}  // namespace

HermitianSpectrum eigh(const CMatrix& H) {
  require_square(H, "eigh");
  const double norm = H.norm();
  const double asym = (H - H.adjoint()).norm();
  if (asym > 1e-8 * std::max(norm, 1e-300) && asym > 0)
    throw PreconditionError("eigh: matrix is not Hermitian (defect " + std::to_string(asym) + ")");
  const CMatrix Hs = 0.5 * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(Hs);
  if (es.info() != Eigen::Success) throw NumericalInstability("eigh: solver did not converge");
  HermitianSpectrum out{es.eigenvalues(), es.eigenvectors()};
  fix_phase(out.vectors);
  return out;
}

CMatrix sqrt_psd(const CMatrix& H) {
  const HermitianSpectrum sp = eigh(H);
  const double scale = H.norm();
  // eigenvalues this small are rounding noise; their roots would not be
  const double noise = 16 * std::numeric_limits<double>::epsilon() * sp.values.cwiseAbs().maxCoeff() *
                       static_cast<double>(H.rows());
  RVector root(sp.values.size());
  for (Eigen::Index i = 0; i < sp.values.size(); ++i) {
    const double v = sp.values(i);
    if (v < -1e-10 * scale)
      throw DomainError("sqrt_psd: eigenvalue " + std::to_string(v) + " is significantly negative");
    root(i) = v > noise ? std::sqrt(v) : 0.0;
  }
  return sp.vectors * root.asDiagonal() * sp.vectors.adjoint();
}

CMatrix pinv_psd(const CMatrix& H, std::optional<double> tol) {
  const HermitianSpectrum sp = eigh(H);
  const double top = std::max(sp.values.maxCoeff(), 0.0);
  const double cut = tol ? *tol : 1e-10 * top;
  if (cut < 0) throw PreconditionError("pinv_psd: negative tolerance");
  RVector inv = RVector::Zero(sp.values.size());
  for (Eigen::Index i = 0; i < sp.values.size(); ++i)
    if (sp.values(i) > cut) inv(i) = 1.0 / sp.values(i);
  return sp.vectors * inv.asDiagonal() * sp.vectors.adjoint();
}

PolarFactors polar_decompose(const CMatrix& F, std::optional<double> abs_tol) {
  require_square(F, "polar_decompose");
  const Eigen::Index n = F.rows();
  Eigen::JacobiSVD<CMatrix> svd(F, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const CMatrix& U = svd.matrixU();
  const CMatrix& V = svd.matrixV();

  const double cut = abs_tol ? *abs_tol : 1e-10 * s(0);
  int rank = 0;
  while (rank < n && s(rank) > cut) ++rank;

  PolarFactors p;
  p.rank = rank;
  p.singular_values = s;
  p.R = V * s.cast<cplx>().asDiagonal() * V.adjoint();
  p.Rprime = U * s.cast<cplx>().asDiagonal() * U.adjoint();
  p.kernelFrame = V.rightCols(n - rank);
  p.cokernelFrame = U.rightCols(n - rank);

  // Both routes of the unitary factor: F R^+ and R'^+ F.
  RVector sinv = RVector::Zero(n);
  for (int i = 0; i < rank; ++i) sinv(i) = 1.0 / s(i);
  const CMatrix Rp = V * sinv.cast<cplx>().asDiagonal() * V.adjoint();
  const CMatrix Rpp = U * sinv.cast<cplx>().asDiagonal() * U.adjoint();
  const CMatrix right = F * Rp;
  const CMatrix left = Rpp * F;
  const double gap = (right - left).norm();
  if (gap > 1e-6)
    throw NumericalInstability("polar_decompose: unitary factor routes disagree by " +
                               std::to_string(gap));
  p.Ustar = U.leftCols(rank) * V.leftCols(rank).adjoint();
  return p;
}

CMatrix unitary_part_composed(const CMatrix& F, const CMatrix& T, Side side) {
  require_square(T, "unitary_part_composed");
  if (T.rows() != F.rows() || F.rows() != F.cols())
    throw DimensionError("unitary_part_composed: incompatible shapes");
  if (unitarity_defect(T) > 1e-8)
    throw PreconditionError("unitary_part_composed: T is not unitary");
  const CMatrix g = polar_decompose(F).Ustar;
  return side == Side::Right ? CMatrix(g * T) : CMatrix(T * g);
}

CMatrix expm_hermitian(const CMatrix& H, cplx z) {
  require_square(H, "expm_hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (H + H.adjoint()));
  const CVector d = (z * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

double unitarity_defect(const CMatrix& U) {
  return (U.adjoint() * U - CMatrix::Identity(U.cols(), U.cols())).norm();
}

double hermiticity_defect(const CMatrix& H) { return (H - H.adjoint()).norm(); }

}  // namespace holo
