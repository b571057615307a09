#pragma once

#include <vector>

#include "holo/linalg.hpp"

namespace holo {

// Singular values of frame overlaps are cosines, so the rank cut for planes is
// absolute.
inline constexpr double kPlaneRankTol = 1e-10;
// Squared singular values closer than this share a principal block.
inline constexpr double kClusterTol = 1e-8;

// An n-plane of C^d held by an orthonormal frame; the projector is cached.
class NPlane {
 public:
  // `frame` must already be orthonormal (to 1e-10).
  explicit NPlane(CMatrix frame);

  // Orthonormalizes the columns of `vectors` (Householder QR); they must be
  // linearly independent.
  static NPlane from_span(const CMatrix& vectors);

  int ambient() const { return static_cast<int>(frame_.rows()); }
  int dim() const { return static_cast<int>(frame_.cols()); }
  const CMatrix& frame() const { return frame_; }
  const CMatrix& projector() const { return projector_; }

 private:
  CMatrix frame_;
  CMatrix projector_;
};

struct PrincipalBlock {
  double sigma = 0;  // cos of the angle; 0 for the kernel block
  double angle = 0;
  CMatrix v_frame;   // d x n_i
  CMatrix w_frame;   // d x n_i; for sigma > 0, w = P_W v / sigma column by column
  int multiplicity() const { return static_cast<int>(v_frame.cols()); }
};

struct PrincipalStructure {
  // Descending sigma; the kernel block (angle pi/2), if any, comes last.
  std::vector<PrincipalBlock> blocks;
  int rank = 0;

  std::vector<double> singular_values() const;  // one per nonzero block
  std::vector<int> multiplicities() const;      // one per block
  std::vector<double> angles() const;           // one per block
  // All n cosines with repetition, descending (zeros for the kernel).
  std::vector<double> cosines() const;
};

struct Teletransporter {
  NPlane source;
  NPlane target;
  // <w_j | Gamma v_k> in the stored frames of target and source.
  CMatrix matrix;
  bool partial = false;
  int rank = 0;
};

// (<w_j|v_k>)_{jk}
CMatrix overlap_matrix(const CMatrix& frameW, const CMatrix& frameV);

PrincipalStructure principal_structure(const NPlane& V, const NPlane& W);

// Gamma_WV, the unitary (or partial) correspondence V -> W.
Teletransporter teletransporter(const NPlane& V, const NPlane& W);

bool is_anti_orthogonal(const NPlane& V, const NPlane& W, double tol = kPlaneRankTol);

double fubini_study_distance(const NPlane& V, const NPlane& W);

// Fast path for hyperplanes (n = d - 1) through the unit normals.
PrincipalStructure hyperplane_structure(const NPlane& V, const NPlane& W);

// Unit normal of a hyperplane.
CVector hyperplane_normal(const NPlane& V);

}  // namespace holo
