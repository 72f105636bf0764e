#include "pseudocp/projective.hpp"

#include <cmath>

namespace pseudocp {

namespace {

constexpr double kLogRoundTripTol = 1e-8;
constexpr double kCutLocusTol = 1e-8;

}  // namespace

double ProjectivePoint::distance(const ProjectivePoint& other) const {
  if (!(other.sig_ == sig_)) throw DimensionError("points of different spaces");
  const Complex a = rep_[pivot_];
  const Complex b = other.rep_[pivot_];
  Complex phase{1.0, 0.0};
  if (std::abs(b) > 0.0) phase = (a / std::abs(a)) / (b / std::abs(b));
  return (rep_ - phase * other.rep_).cwiseAbs().maxCoeff();
}

ProjectivePoint canonicalize(const Signature& sig, const AmbientVector& z) {
  if (z.size() != sig.dim()) throw DimensionError("point has wrong length");
  const double gzz = real_metric(sig, z, z);
  if (!(gzz > 0.0)) {
    throw NotProjectablePoint("g(z,z) must be positive to represent a point");
  }
  AmbientVector rep = z / std::sqrt(gzz);
  int pivot = 0;
  double best = -1.0;
  for (int j = 0; j < rep.size(); ++j) {
    const double m = std::abs(rep[j]);
    if (m > best) {
      best = m;
      pivot = j;
    }
  }
  rep *= std::conj(rep[pivot]) / best;
  rep[pivot] = Complex{best, 0.0};
  return ProjectivePoint(sig, std::move(rep), pivot);
}

AmbientVector horizontal_project(const Signature& sig, const AmbientVector& q,
                                 const AmbientVector& x, double sphere_tol) {
  require_sphere_point(sig, q, sphere_tol);
  const AmbientVector iq = jmul(q);
  // g(q,q) = g(iq,iq) = 1 and g(q,iq) = 0.
  return x - real_metric(sig, x, q) * q - real_metric(sig, x, iq) * iq;
}

ProjectiveTangent make_tangent(const ProjectivePoint& x, const AmbientVector& v) {
  return {x, horizontal_project(x.signature(), x.rep(), v)};
}

ProjectiveTangent tangent_at(const Signature& sig, const AmbientVector& q,
                             const AmbientVector& v) {
  ProjectivePoint x = canonicalize(sig, q);
  // x.rep() = c q with |c| = 1 up to normalization; carry v along.
  const Complex c = hermitian_product(sig, x.rep(), q);
  return make_tangent(x, c * v);
}

AmbientVector sphere_geodesic(const Signature& sig, const AmbientVector& q,
                              const AmbientVector& v, double t) {
  const double gvv = real_metric(sig, v, v);
  const double scale = std::max(1.0, v.squaredNorm());
  if (std::abs(gvv) <= 1e-15 * scale) return q + t * v;
  if (gvv > 0.0) {
    const double r = std::sqrt(gvv);
    return std::cos(r * t) * q + (std::sin(r * t) / r) * v;
  }
  const double r = std::sqrt(-gvv);
  return std::cosh(r * t) * q + (std::sinh(r * t) / r) * v;
}

ProjectivePoint exp_map(const ProjectiveTangent& v, double t) {
  const Signature& sig = v.at.signature();
  return canonicalize(sig, sphere_geodesic(sig, v.at.rep(), v.vec, t));
}

ProjectiveTangent log_in_leaf(const ProjectivePoint& x, const ProjectivePoint& y) {
  const Signature& sig = x.signature();
  const AmbientVector& q = x.rep();
  const Complex c = hermitian_product(sig, y.rep(), q);
  const double a = std::abs(c);
  if (a <= kCutLocusTol) {
    throw LogMapError("target lies in the cut locus of the base point");
  }
  // Phase-align y so that g_C(y, q) = a > 0; w is then horizontal at q.
  const AmbientVector yy = (std::conj(c) / a) * y.rep();
  const AmbientVector w = yy - a * q;
  const double gww = 1.0 - a * a;
  AmbientVector v;
  if (std::abs(gww) <= 1e-12) {
    v = w;
  } else if (gww > 0.0) {
    v = (std::acos(std::min(a, 1.0)) / std::sqrt(gww)) * w;
  } else {
    v = (std::acosh(a) / std::sqrt(-gww)) * w;
  }
  ProjectiveTangent out{x, v};
  const double err = exp_map(out, 1.0).distance(y);
  if (!(err <= kLogRoundTripTol)) {
    throw LogMapError("log inversion did not reproduce the target (error " +
                      std::to_string(err) + ")");
  }
  return out;
}

AmbientVector curvature_tensor(const Signature& sig, const AmbientVector& x,
                               const AmbientVector& y, const AmbientVector& z) {
  const AmbientVector jx = jmul(x);
  const AmbientVector jy = jmul(y);
  const AmbientVector jz = jmul(z);
  return real_metric(sig, y, z) * x - real_metric(sig, x, z) * y +
         real_metric(sig, jy, z) * jx - real_metric(sig, jx, z) * jy +
         2.0 * real_metric(sig, x, jy) * jz;
}

ProjectiveTangent curvature_tensor(const ProjectiveTangent& x,
                                   const ProjectiveTangent& y,
                                   const ProjectiveTangent& z) {
  const double mismatch = std::max((x.at.rep() - y.at.rep()).cwiseAbs().maxCoeff(),
                                   (x.at.rep() - z.at.rep()).cwiseAbs().maxCoeff());
  if (mismatch > 1e-12) {
    throw BasePointError("curvature tensor arguments are based at different points");
  }
  return {x.at, curvature_tensor(x.at.signature(), x.vec, y.vec, z.vec)};
}

AmbientVector covariant_derivative_lift(const Signature& sig,
                                        const AmbientVector& q,
                                        const AmbientVector& dq,
                                        const AmbientVector& v,
                                        const AmbientVector& dv) {
  const AmbientVector iq = jmul(q);
  const double gqq = real_metric(sig, q, q);
  AmbientVector h = dv - (real_metric(sig, dv, q) / gqq) * q;
  h -= (real_metric(sig, h, iq) / gqq) * iq;
  const double vertical = real_metric(sig, dq, iq) / gqq;
  return h - vertical * jmul(v);
}

}  // namespace pseudocp
