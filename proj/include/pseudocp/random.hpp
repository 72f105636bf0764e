#pragma once

// Seeded generators for sphere points and horizontal vectors.

#include <random>

#include "pseudocp/linalg.hpp"

namespace pseudocp {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
AmbientVector random_vector(int dim, Rng& rng);

/// Point of the pseudo-sphere, kept away from the light cone
/// (g(z,z) > 0.05 |z|^2 before normalization).
AmbientVector random_sphere_point(const Signature& sig, Rng& rng);

/// Horizontal vector at q (projection of a random vector).
AmbientVector random_horizontal(const Signature& sig, const AmbientVector& q, Rng& rng);

/// Unit horizontal vector at q with g(x,x) = +1 or -1.
AmbientVector random_unit_horizontal(const Signature& sig, const AmbientVector& q, int sign,
                                     Rng& rng);

}  // namespace pseudocp
