#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "holo/errors.hpp"

namespace holo {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr cplx I{0.0, 1.0};

struct HermitianSpectrum {
  RVector values;   // ascending
  CMatrix vectors;  // columns, unitary
};

// Polar data of a square F. `Ustar` is already zero on ker F, so it is the
// full Gamma(F) of the right decomposition F = Ustar R = Rprime Ustar.
struct PolarFactors {
  CMatrix R;
  CMatrix Rprime;
  CMatrix Ustar;
  int rank = 0;
  RVector singular_values;  // descending
  CMatrix kernelFrame;      // orthonormal basis of ker F
  CMatrix cokernelFrame;    // orthonormal basis of (ran F)^perp
};

enum class Side { Left, Right };

// Hermitian eigendecomposition. Each eigenvector is rotated so that its
// first component of largest modulus is real positive.
HermitianSpectrum eigh(const CMatrix& H);

CMatrix sqrt_psd(const CMatrix& H);

// Eigenvalues above tol are inverted, the rest dropped. The default tol is
// 1e-10 times the largest eigenvalue.
CMatrix pinv_psd(const CMatrix& H, std::optional<double> tol = std::nullopt);

// Rank cut: singular values at or below `abs_tol` count as zero. Without it
// the cut is 1e-10 * sigma_max.
PolarFactors polar_decompose(const CMatrix& F,
                             std::optional<double> abs_tol = std::nullopt);

// Gamma(F T) = Gamma(F) T for Side::Right, Gamma(T F) = T Gamma(F) for Side::Left.
CMatrix unitary_part_composed(const CMatrix& F, const CMatrix& T, Side side);

// exp(z H) for Hermitian H, through the spectrum of H. With z purely
// imaginary the result is unitary to rounding.
CMatrix expm_hermitian(const CMatrix& H, cplx z);

double unitarity_defect(const CMatrix& U);
double hermiticity_defect(const CMatrix& H);

// Haar-distributed unitary from a complex Gaussian matrix.
template <class Rng>
CMatrix random_unitary(int n, Rng& rng);

template <class Rng>
CMatrix random_gaussian(int rows, int cols, Rng& rng);

}  // namespace holo

#include "holo/detail/random.hpp"
