#include "pseudocp/random.hpp"

#include <cmath>

#include "pseudocp/errors.hpp"
#include "pseudocp/projective.hpp"

namespace pseudocp {

AmbientVector random_vector(int dim, Rng& rng) {
  std::normal_distribution<double> nd;
  AmbientVector v(dim);
  for (int j = 0; j < dim; ++j) v[j] = Complex(nd(rng), nd(rng));
  return v;
}

AmbientVector random_sphere_point(const Signature& sig, Rng& rng) {
  for (;;) {
    AmbientVector z = random_vector(sig.dim(), rng);
    const double g = real_metric(sig, z, z);
    if (g > 0.05 * z.squaredNorm()) return z / std::sqrt(g);
  }
}

AmbientVector random_horizontal(const Signature& sig, const AmbientVector& q, Rng& rng) {
  return horizontal_project(sig, q, random_vector(sig.dim(), rng));
}

AmbientVector random_unit_horizontal(const Signature& sig, const AmbientVector& q, int sign,
                                     Rng& rng) {
  if (sign > 0 ? sig.n() - sig.p() < 1 : sig.p() < 1) {
    throw CausalCharacterError("signature has no horizontal vectors of that sign");
  }
  for (;;) {
    const AmbientVector x = random_horizontal(sig, q, rng);
    const double g = real_metric(sig, x, x);
    if (sign * g > 0.05 * x.squaredNorm()) return x / std::sqrt(std::abs(g));
  }
}

}  // namespace pseudocp
