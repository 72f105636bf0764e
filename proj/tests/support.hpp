#pragma once

// Oracles shared by the test binaries. Nothing here calls the code path it
// is used to check.

#include <cmath>
#include <vector>

#include "doctest.h"
#include "pseudocp/linalg.hpp"
#include "pseudocp/random.hpp"

namespace oracle {

using pseudocp::AmbientVector;
using pseudocp::Signature;

inline double max_abs(const AmbientVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Geodesic of the hyperquadric g(y,y) = 1 by RK4 on y'' = -g(y',y') y.
inline AmbientVector rk4_sphere_geodesic(const Signature& sig, const AmbientVector& q,
                                         const AmbientVector& v, double t, int steps = 4000) {
  auto g = [&](const AmbientVector& a, const AmbientVector& b) {
    double out = 0.0;
    for (int j = 0; j < a.size(); ++j) out += sig.sign(j) * (a[j] * std::conj(b[j])).real();
    return out;
  };
  AmbientVector y = q, w = v;
  const double h = t / steps;
  auto acc = [&](const AmbientVector& yy, const AmbientVector& ww) -> AmbientVector {
    return -g(ww, ww) * yy;
  };
  for (int k = 0; k < steps; ++k) {
    const AmbientVector k1y = w, k1w = acc(y, w);
    const AmbientVector k2y = w + h / 2 * k1w, k2w = acc(y + h / 2 * k1y, w + h / 2 * k1w);
    const AmbientVector k3y = w + h / 2 * k2w, k3w = acc(y + h / 2 * k2y, w + h / 2 * k2w);
    const AmbientVector k4y = w + h * k3w, k4w = acc(y + h * k3y, w + h * k3w);
    y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
    w += h / 6 * (k1w + 2 * k2w + 2 * k3w + k4w);
  }
  return y;
}

// Phase-aligned distance between two representatives of the same class.
inline double class_distance(const AmbientVector& a, const AmbientVector& b) {
  const std::complex<double> c = b.dot(a);  // sum conj(b_j) a_j
  const std::complex<double> phase = std::abs(c) > 0 ? c / std::abs(c) : 1.0;
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace oracle
