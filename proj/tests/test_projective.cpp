#include "support.hpp"
#include "pseudocp/projective.hpp"

using namespace pseudocp;
using oracle::max_abs;

namespace {
const Complex I{0.0, 1.0};
AmbientVector unit(int dim, int j) { return AmbientVector::Unit(dim, j); }

AmbientVector random_horizontal_nonnull(const Signature& s, const AmbientVector& q, Rng& rng) {
  for (;;) {
    AmbientVector x = random_horizontal(s, q, rng);
    if (std::abs(real_metric(s, x, x)) > 0.05 * x.squaredNorm()) return x;
  }
}
}  // namespace

TEST_CASE("canonicalize") {
  const Signature s(3, 1);
  CHECK(max_abs(canonicalize(s, I * unit(4, 3)).rep() - unit(4, 3)) < 1e-15);
  CHECK(max_abs(canonicalize(s, 2.0 * unit(4, 3)).rep() - unit(4, 3)) < 1e-15);
  CHECK_THROWS_AS(canonicalize(s, unit(4, 0)), NotProjectablePoint);
  CHECK_THROWS_AS(canonicalize(s, unit(4, 0) + unit(4, 1)), NotProjectablePoint);

  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const AmbientVector z = random_sphere_point(s, rng);
    const ProjectivePoint a = canonicalize(s, z);
    const ProjectivePoint b = canonicalize(s, std::polar(3.0, 0.7 * k) * z);
    CHECK(a.distance(b) < 1e-12);
    CHECK(std::abs(real_metric(s, a.rep(), a.rep()) - 1.0) < 1e-12);
    CHECK(a.rep()[a.pivot()].imag() == 0.0);
    CHECK(a.rep()[a.pivot()].real() > 0.0);
  }
}

TEST_CASE("horizontal projection") {
  const Signature s(3, 1);
  Rng rng(6);
  const AmbientVector q = random_sphere_point(s, rng);
  const AmbientVector h = random_horizontal(s, q, rng);
  CHECK(max_abs(horizontal_project(s, q, I * q)) < 1e-12);
  CHECK(max_abs(horizontal_project(s, q, h) - h) < 1e-12);
  CHECK(max_abs(horizontal_project(s, q, I * q + h) - h) < 1e-12);
  CHECK(std::abs(real_metric(s, h, q)) < 1e-12);
  CHECK(std::abs(real_metric(s, h, I * q)) < 1e-12);
}

TEST_CASE("sphere geodesics") {
  const Signature s(3, 1);
  const AmbientVector q = unit(4, 3);
  CHECK(max_abs(sphere_geodesic(s, q, unit(4, 2), M_PI / 2) - unit(4, 2)) < 1e-15);
  CHECK(max_abs(sphere_geodesic(s, q, unit(4, 0), 0.0) - q) == 0.0);
  const AmbientVector light = unit(4, 0) + unit(4, 1);
  for (double t : {-3.0, 0.5, 7.0}) {
    const AmbientVector y = sphere_geodesic(s, q, light, t);
    CHECK(std::abs(real_metric(s, y, y) - 1.0) < 1e-12);
    CHECK(max_abs(y - (q + t * light)) < 1e-15);
  }
  Rng rng(7);
  for (int k = 0; k < 30; ++k) {
    const AmbientVector p = random_sphere_point(s, rng);
    const AmbientVector v = random_horizontal(s, p, rng);
    for (double t : {-10.0, -1.0, 2.5, 10.0}) {
      const AmbientVector y = sphere_geodesic(s, p, v, t);
      CHECK(std::abs(real_metric(s, y, y) - 1.0) <= 1e-9 * std::max(1.0, y.squaredNorm()));
    }
  }
}

TEST_CASE("exp map against an RK4 oracle") {
  Rng rng(8);
  for (const Signature s : {Signature(2, 1), Signature(3, 1), Signature(4, 2)}) {
    for (int k = 0; k < 10; ++k) {
      const ProjectivePoint x = canonicalize(s, random_sphere_point(s, rng));
      AmbientVector v = random_horizontal_nonnull(s, x.rep(), rng);
      v /= std::sqrt(std::abs(real_metric(s, v, v)));
      const ProjectiveTangent tv = make_tangent(x, v);
      CHECK(exp_map(tv, 0.0).distance(x) < 1e-14);
      for (double t : {0.4, 1.3, M_PI}) {
        const AmbientVector want = oracle::rk4_sphere_geodesic(s, x.rep(), v, t);
        const double scale = std::max(1.0, want.norm());
        CHECK(oracle::class_distance(exp_map(tv, t).rep(), canonicalize(s, want).rep()) <
              1e-8 * scale);
      }
    }
  }
}

TEST_CASE("exp map homogeneity") {
  const Signature s(3, 1);
  Rng rng(9);
  for (int k = 0; k < 10; ++k) {
    const ProjectivePoint x = canonicalize(s, random_sphere_point(s, rng));
    const AmbientVector v = random_horizontal(s, x.rep(), rng);
    for (double a : {0.5, -2.0}) {
      const ProjectivePoint lhs = exp_map(make_tangent(x, v), a * 0.7);
      const ProjectivePoint rhs = exp_map(make_tangent(x, a * v), 0.7);
      CHECK(lhs.distance(rhs) < 1e-10);
    }
  }
}

TEST_CASE("log in leaf") {
  const Signature s(3, 1);
  Rng rng(10);
  const ProjectivePoint x = canonicalize(s, random_sphere_point(s, rng));
  CHECK(max_abs(log_in_leaf(x, x).vec) < 1e-12);
  for (int k = 0; k < 20; ++k) {
    AmbientVector v = random_horizontal_nonnull(s, x.rep(), rng);
    v *= 0.5 / v.norm();
    const ProjectivePoint y = exp_map(make_tangent(x, v), 1.0);
    const ProjectiveTangent back = log_in_leaf(x, y);
    CHECK(max_abs(back.vec - v) < 1e-8);
  }
  AmbientVector u = random_unit_horizontal(s, x.rep(), +1, rng);
  const ProjectivePoint far = exp_map(make_tangent(x, u), M_PI / 2);
  CHECK_THROWS_AS(log_in_leaf(x, far), LogMapError);
}

TEST_CASE("curvature tensor") {
  Rng rng(11);
  for (const Signature s : {Signature(2, 1), Signature(3, 1), Signature(3, 2), Signature(4, 2)}) {
    const AmbientVector q = random_sphere_point(s, rng);
    for (int k = 0; k < 20; ++k) {
      const AmbientVector x = random_horizontal_nonnull(s, q, rng);
      const AmbientVector y = random_horizontal(s, q, rng), z = random_horizontal(s, q, rng);
      const AmbientVector w = random_horizontal(s, q, rng);
      const double gx = real_metric(s, x, x);
      const AmbientVector jx = jmul(x);
      CHECK(real_metric(s, curvature_tensor(s, x, jx, jx), x) / (gx * gx) ==
            doctest::Approx(4.0).epsilon(1e-10));
      CHECK(max_abs(curvature_tensor(s, x, x, z)) < 1e-12);
      CHECK(max_abs(curvature_tensor(s, x, y, z) + curvature_tensor(s, y, x, z)) < 1e-12);
      CHECK(std::abs(real_metric(s, curvature_tensor(s, x, y, z), w) +
                     real_metric(s, curvature_tensor(s, x, y, w), z)) < 1e-10);
    }
  }
  // Unit spacelike X: R(X,JX)JX = 4X. Totally real spacelike plane: R(X,Y)Y = X.
  const Signature s(3, 1);
  const AmbientVector q = unit(4, 3), x = unit(4, 2), y = unit(4, 1);
  CHECK(max_abs(curvature_tensor(s, x, jmul(x), jmul(x)) - 4.0 * x) < 1e-15);
  CHECK(max_abs(curvature_tensor(s, x, y, y) - x) < 1e-15);

  const ProjectivePoint a = canonicalize(s, q);
  const ProjectivePoint b = canonicalize(s, sphere_geodesic(s, q, x, 0.3));
  CHECK_THROWS_AS(curvature_tensor(make_tangent(a, x), make_tangent(a, y), make_tangent(b, y)),
                  BasePointError);
  const ProjectiveTangent r = curvature_tensor(make_tangent(a, x), make_tangent(a, y), make_tangent(a, y));
  CHECK(max_abs(r.vec - x) < 1e-15);
}

TEST_CASE("tangents move with the representative") {
  const Signature s(3, 1);
  Rng rng(12);
  const AmbientVector q = random_sphere_point(s, rng);
  const AmbientVector v = random_horizontal(s, q, rng);
  const Complex ph = std::polar(1.0, 1.1);
  const ProjectiveTangent a = tangent_at(s, q, v);
  const ProjectiveTangent b = tangent_at(s, ph * q, ph * v);
  CHECK(max_abs(a.vec - b.vec) < 1e-12);
  CHECK(std::abs(real_metric(s, a.vec, a.vec) - real_metric(s, v, v)) < 1e-12);
}
