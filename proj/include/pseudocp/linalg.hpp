#pragma once

// Indefinite Hermitian geometry on C^{n+1}_p and calculus on the
// pseudo-sphere S^{2n+1}_{2p} = { z : g(z,z) = 1 }.

#include <Eigen/Dense>
#include <complex>
#include <string_view>

#include "pseudocp/errors.hpp"

namespace pseudocp {

using Complex = std::complex<double>;

/// Point or tangent vector of C^{n+1}; entries are stored as interleaved
/// (re, im) pairs by std::complex.
using AmbientVector = Eigen::VectorXcd;

inline constexpr double kDefaultLightTol = 1e-8;
inline constexpr double kDefaultSphereTol = 1e-10;

/// The pair (n, p): complex projective dimension and index parameter.
/// The ambient space is C^{n+1} with the first p coordinates negative.
class Signature {
 public:
  /// Throws SignatureError unless n >= 2 and 1 <= p <= n - 1.
  Signature(int n, int p);

  int n() const { return n_; }
  int p() const { return p_; }
  /// Complex dimension of the ambient space, n + 1.
  int dim() const { return n_ + 1; }
  /// Diagonal entry of the metric at coordinate j (0-based).
  double sign(int j) const { return j < p_ ? -1.0 : 1.0; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  int n_;
  int p_;
};

enum class CausalCharacter { Spacelike, Timelike, Lightlike, Zero };

std::string_view to_string(CausalCharacter c);

/// g_C(z, w) = -sum_{j<=p} z_j conj(w_j) + sum_{j>p} z_j conj(w_j).
Complex hermitian_product(const Signature& sig, const AmbientVector& z,
                          const AmbientVector& w);

/// g = Re g_C.
double real_metric(const Signature& sig, const AmbientVector& z,
                   const AmbientVector& w);

/// Complex structure J: multiplication by i.
AmbientVector jmul(const AmbientVector& z);

/// Zero if |v| <= tol, Lightlike if |g(v,v)| <= tol |v|^2, else by sign.
CausalCharacter causal_character(const Signature& sig, const AmbientVector& v,
                                 double tol = kDefaultLightTol);

/// Throws SpherePointError if |g(q,q) - 1| > tol.
void require_sphere_point(const Signature& sig, const AmbientVector& q,
                          double tol = kDefaultSphereTol);

/// X - g(X,q) q, the component of X tangent to the pseudo-sphere at q.
AmbientVector sphere_tangent_project(const Signature& sig,
                                     const AmbientVector& q,
                                     const AmbientVector& x,
                                     double tol = kDefaultSphereTol);

struct GaussSplit {
  AmbientVector tangential;
  /// Coefficient on the position vector; equals -g(X,Y) for tangent fields.
  double normal_coefficient = 0.0;
};

/// Splits an ambient derivative D_X Y at q into its pseudo-sphere part
/// and the multiple of the unit normal chi(q) = q.
GaussSplit sphere_gauss_split(const Signature& sig, const AmbientVector& q,
                              const AmbientVector& dxy,
                              double tol = kDefaultSphereTol);

/// Real 2(n+1)-vector (Re z_1..Re z_{n+1}, Im z_1..Im z_{n+1}).
Eigen::VectorXd realify(const AmbientVector& z);
AmbientVector complexify(const Eigen::VectorXd& x);

/// Diagonal of the real metric in the realified coordinates.
Eigen::VectorXd real_metric_diagonal(const Signature& sig);

}  // namespace pseudocp
