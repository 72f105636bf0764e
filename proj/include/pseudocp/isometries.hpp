#pragma once

// SU(p, n+1-p) frames and the catalogue of totally geodesic leaves:
// complex hyperplanes CP^{n-1}_t, totally real surfaces RP2 / S2_1 / H2_2
// and totally real threefolds B3_1 / B3_2.

#include <string_view>
#include <utility>
#include <vector>

#include "pseudocp/projective.hpp"

namespace pseudocp {

using ComplexMatrix = Eigen::MatrixXcd;

/// M with conj(M)^T I M = I and det M = 1, I = diag(-1 x p, +1 x (n+1-p)).
class IndefiniteUnitaryMatrix {
 public:
  /// Validates both invariants to `tol`; throws FrameError otherwise.
  IndefiniteUnitaryMatrix(const Signature& sig, ComplexMatrix m, double tol = 1e-10);

  const Signature& signature() const { return sig_; }
  const ComplexMatrix& matrix() const { return m_; }

  AmbientVector apply(const AmbientVector& v) const { return m_ * v; }
  /// M^{-1} v = I conj(M)^T I v.
  AmbientVector apply_inverse(const AmbientVector& v) const;

  IndefiniteUnitaryMatrix compose(const IndefiniteUnitaryMatrix& rhs) const;
  IndefiniteUnitaryMatrix inverse() const;

  /// max |conj(M)^T I M - I|.
  double unitarity_defect() const;
  /// |det M - 1|.
  double determinant_defect() const;

 private:
  Signature sig_;
  ComplexMatrix m_;
};

/// conj(M)^T I M - I, max entry; no validation.
double unitarity_defect(const Signature& sig, const ComplexMatrix& m);

/// A vector pinned to a 0-based column of the frame under construction.
struct PlacedVector {
  int slot;
  AmbientVector vec;
};

/// Completes mutually g_C-orthonormal vectors to a frame in SU(p, n+1-p).
/// Every placed vector must have g(v,v) = sign(slot). Free columns come from
/// the standard basis by Gram-Schmidt with pivoting on |g|; the largest free
/// column index absorbs the determinant phase.
IndefiniteUnitaryMatrix complete_frame(const Signature& sig,
                                       const std::vector<PlacedVector>& placed,
                                       double tol = 1e-8);

/// Column of q (0-based n-1) and of eta_hat (n if spacelike, 0 if timelike).
inline int base_slot(const Signature& sig) { return sig.n() - 1; }
int eta_slot(const Signature& sig, CausalCharacter eta_character);

/// Frame with q and the horizontal unit eta_hat in their standard columns,
/// so that f_M maps (o,0) to q and Q_+ or Q_- to eta_hat.
IndefiniteUnitaryMatrix frame_to_isometry(const Signature& sig,
                                          const AmbientVector& q,
                                          const AmbientVector& eta_hat);

enum class LeafKind { ComplexHyperplane, RP2, H2_2, S2_1, B3_1, B3_2 };
std::string_view to_string(LeafKind k);

/// Image under an isometry of a model leaf living in a coordinate subspace.
/// Complex leaves use the complex span of `model_slots`, real leaves the
/// real span; both intersected with the pseudo-sphere.
class TotallyGeodesicLeaf {
 public:
  TotallyGeodesicLeaf(LeafKind kind, IndefiniteUnitaryMatrix isometry, int t,
                      int model_base, std::vector<int> model_slots);

  LeafKind kind() const { return kind_; }
  const IndefiniteUnitaryMatrix& isometry() const { return iso_; }
  /// Index of the leaf: t for CP^{n-1}_t, number of timelike tangent
  /// directions for the real leaves.
  int index() const { return t_; }
  bool is_complex() const { return kind_ == LeafKind::ComplexHyperplane; }
  const std::vector<int>& model_slots() const { return slots_; }
  int model_base() const { return base_; }

  AmbientVector base_point() const;
  /// Real tangent basis at the base point (horizontal lifts).
  std::vector<AmbientVector> tangent_basis() const;
  /// Leaf point exp(sum c_k T_k) for coordinates in the tangent basis.
  AmbientVector point(const std::vector<double>& coords) const;
  /// Distance of y from the model subspace, measured in model coordinates
  /// after phase alignment; zero (to round-off) on the leaf.
  double membership_residual(const AmbientVector& y) const;

 private:
  LeafKind kind_;
  IndefiniteUnitaryMatrix iso_;
  int t_;
  int base_;
  std::vector<int> slots_;
};

/// Leaf through x tangent to (span{eta, J eta})^perp.
TotallyGeodesicLeaf complex_hyperplane_leaf(const ProjectiveTangent& eta);

/// Leaf through x tangent to the totally real plane span{u, w}.
/// Throws PlaneError for a degenerate or non-totally-real plane.
TotallyGeodesicLeaf totally_real_surface(const ProjectivePoint& x,
                                         const AmbientVector& u,
                                         const AmbientVector& w);

/// Same for a totally real 3-plane of index 1 or 2 (IndexError otherwise).
TotallyGeodesicLeaf totally_real_threefold(const ProjectivePoint& x,
                                           const std::vector<AmbientVector>& plane);

}  // namespace pseudocp
