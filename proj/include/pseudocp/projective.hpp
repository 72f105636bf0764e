#pragma once

// The submersion Pi : S^{2n+1}_{2p} -> CP^n_p. Points of CP^n_p are handled
// through phase-canonical sphere representatives; tangent vectors through
// their horizontal lifts (orthogonal to q and iq).

#include "pseudocp/linalg.hpp"

namespace pseudocp {

/// Element of CP^n_p stored as its canonical sphere representative: the
/// entry of largest modulus (lowest index on ties) is real and positive.
class ProjectivePoint {
 public:
  const Signature& signature() const { return sig_; }
  const AmbientVector& rep() const { return rep_; }
  /// Index of the entry made real positive by canonicalization.
  int pivot() const { return pivot_; }

  /// Max entrywise difference of representatives after aligning the phase
  /// of `other` at this point's pivot. Equals the canonical-coordinate
  /// distance whenever both pivots agree.
  double distance(const ProjectivePoint& other) const;
  bool approx_equal(const ProjectivePoint& other, double tol) const {
    return distance(other) <= tol;
  }

 private:
  ProjectivePoint(Signature sig, AmbientVector rep, int pivot)
      : sig_(sig), rep_(std::move(rep)), pivot_(pivot) {}
  friend ProjectivePoint canonicalize(const Signature&, const AmbientVector&);

  Signature sig_;
  AmbientVector rep_;
  int pivot_;
};

/// Rescales z onto the pseudo-sphere and fixes the phase. Throws
/// NotProjectablePoint when g(z,z) <= 0.
ProjectivePoint canonicalize(const Signature& sig, const AmbientVector& z);

/// Horizontal lift of a tangent vector, based at `at.rep()`.
struct ProjectiveTangent {
  ProjectivePoint at;
  AmbientVector vec;
};

/// X - g(X,q) q - g(X,iq) iq: strips the normal and vertical parts.
AmbientVector horizontal_project(const Signature& sig, const AmbientVector& q,
                                 const AmbientVector& x,
                                 double sphere_tol = kDefaultSphereTol);

/// Builds a tangent at x from an ambient vector given at x.rep().
ProjectiveTangent make_tangent(const ProjectivePoint& x, const AmbientVector& v);

/// Moves a horizontal vector given at representative q to the canonical
/// representative of Pi(q).
ProjectiveTangent tangent_at(const Signature& sig, const AmbientVector& q,
                             const AmbientVector& v);

/// Closed-form geodesic of the pseudo-sphere through q with velocity v.
AmbientVector sphere_geodesic(const Signature& sig, const AmbientVector& q,
                              const AmbientVector& v, double t);

/// exp_x(t v): projection of the horizontal sphere geodesic.
ProjectivePoint exp_map(const ProjectiveTangent& v, double t);

/// Inverse of exp_map(x, ., 1) for y in a totally geodesic leaf through x.
/// Throws LogMapError when y lies in the cut locus of x or the round trip
/// does not reproduce y to 1e-8.
ProjectiveTangent log_in_leaf(const ProjectivePoint& x, const ProjectivePoint& y);

/// Curvature tensor of CP^n_p (constant holomorphic sectional curvature 4)
/// on horizontal lifts at a common base point.
ProjectiveTangent curvature_tensor(const ProjectiveTangent& x,
                                   const ProjectiveTangent& y,
                                   const ProjectiveTangent& z);

/// Same tensor on raw horizontal vectors at one representative.
AmbientVector curvature_tensor(const Signature& sig, const AmbientVector& x,
                               const AmbientVector& y, const AmbientVector& z);

/// Horizontal lift of the Levi-Civita derivative of CP^n_p along a path of
/// representatives q(u) with velocity dq, for a horizontal field V(u) with
/// ambient derivative dV. The path need not be horizontal; its vertical
/// velocity g(dq, iq) contributes -g(dq,iq) iV.
AmbientVector covariant_derivative_lift(const Signature& sig,
                                        const AmbientVector& q,
                                        const AmbientVector& dq,
                                        const AmbientVector& v,
                                        const AmbientVector& dv);

}  // namespace pseudocp
