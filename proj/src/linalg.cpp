#include "pseudocp/linalg.hpp"

#include <cmath>
#include <string>

namespace pseudocp {

namespace {

void require_same_size(const Signature& sig, const AmbientVector& z,
                       const AmbientVector& w) {
  if (z.size() != sig.dim() || w.size() != sig.dim()) {
    throw DimensionError("expected vectors of length " +
                         std::to_string(sig.dim()) + ", got " +
                         std::to_string(z.size()) + " and " +
                         std::to_string(w.size()));
  }
}

}  // namespace

Signature::Signature(int n, int p) : n_(n), p_(p) {
  if (n < 2) throw SignatureError("n must be at least 2");
  if (p < 1 || p > n - 1) {
    throw SignatureError("index p must satisfy 1 <= p <= n-1 (n=" +
                         std::to_string(n) + ", p=" + std::to_string(p) + ")");
  }
}

std::string_view to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::Spacelike: return "spacelike";
    case CausalCharacter::Timelike: return "timelike";
    case CausalCharacter::Lightlike: return "lightlike";
    case CausalCharacter::Zero: return "zero";
  }
  return "unknown";
}

Complex hermitian_product(const Signature& sig, const AmbientVector& z,
                          const AmbientVector& w) {
  require_same_size(sig, z, w);
  Complex neg{0.0, 0.0};
  Complex pos{0.0, 0.0};
  for (int j = 0; j < sig.dim(); ++j) {
    const Complex term = z[j] * std::conj(w[j]);
    if (j < sig.p())
      neg += term;
    else
      pos += term;
  }
  return pos - neg;
}

double real_metric(const Signature& sig, const AmbientVector& z,
                   const AmbientVector& w) {
  return hermitian_product(sig, z, w).real();
}

AmbientVector jmul(const AmbientVector& z) { return Complex{0.0, 1.0} * z; }

CausalCharacter causal_character(const Signature& sig, const AmbientVector& v,
                                 double tol) {
  const double euclid2 = v.squaredNorm();
  if (std::sqrt(euclid2) <= tol) return CausalCharacter::Zero;
  const double gvv = real_metric(sig, v, v);
  if (std::abs(gvv) <= tol * euclid2) return CausalCharacter::Lightlike;
  return gvv > 0.0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

void require_sphere_point(const Signature& sig, const AmbientVector& q,
                          double tol) {
  if (q.size() != sig.dim()) throw DimensionError("sphere point has wrong length");
  const double defect = std::abs(real_metric(sig, q, q) - 1.0);
  if (!(defect <= tol)) {
    throw SpherePointError("point is off the pseudo-sphere: |g(q,q)-1| = " +
                           std::to_string(defect));
  }
}

AmbientVector sphere_tangent_project(const Signature& sig,
                                     const AmbientVector& q,
                                     const AmbientVector& x, double tol) {
  require_sphere_point(sig, q, tol);
  return x - real_metric(sig, x, q) * q;
}

GaussSplit sphere_gauss_split(const Signature& sig, const AmbientVector& q,
                              const AmbientVector& dxy, double tol) {
  require_sphere_point(sig, q, tol);
  const double coeff = real_metric(sig, dxy, q);
  return {dxy - coeff * q, coeff};
}

Eigen::VectorXd realify(const AmbientVector& z) {
  const auto m = z.size();
  Eigen::VectorXd x(2 * m);
  x.head(m) = z.real();
  x.tail(m) = z.imag();
  return x;
}

AmbientVector complexify(const Eigen::VectorXd& x) {
  const auto m = x.size() / 2;
  AmbientVector z(m);
  for (Eigen::Index j = 0; j < m; ++j) z[j] = Complex{x[j], x[m + j]};
  return z;
}

Eigen::VectorXd real_metric_diagonal(const Signature& sig) {
  Eigen::VectorXd d(2 * sig.dim());
  for (int j = 0; j < sig.dim(); ++j) {
    d[j] = sig.sign(j);
    d[sig.dim() + j] = sig.sign(j);
  }
  return d;
}

}  // namespace pseudocp
