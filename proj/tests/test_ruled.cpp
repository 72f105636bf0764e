#include "support.hpp"
#include "pseudocp/examples.hpp"
#include "pseudocp/ruled.hpp"

using namespace pseudocp;
using oracle::max_abs;

namespace {
AmbientVector unit(int dim, int j) { return AmbientVector::Unit(dim, j); }
const Complex I{0.0, 1.0};

LiftedCurve geodesic_curve(const Signature& s, const AmbientVector& q, const AmbientVector& v) {
  return LiftedCurve(
      s, [=](double t) { return sphere_geodesic(s, q, v, t); },
      [=](double t) { return -std::sin(t) * q + std::cos(t) * v; },
      [=](double t) { return -std::cos(t) * q - std::sin(t) * v; },
      [=](double t) { return std::sin(t) * q - std::cos(t) * v; });
}

// Normalized affine chart q + sum u_k W_k; no structure beyond that.
class AffineImmersion : public Immersion {
 public:
  AffineImmersion(Signature s, AmbientVector q, VectorField w)
      : s_(s), q_(std::move(q)), w_(std::move(w)) {}
  const Signature& signature() const override { return s_; }
  AmbientVector point(std::span<const double> u) const override {
    AmbientVector v = q_;
    for (std::size_t k = 0; k < w_.size(); ++k) v += u[k] * w_[k];
    return v / std::sqrt(real_metric(s_, v, v));
  }

 private:
  Signature s_;
  AmbientVector q_;
  VectorField w_;
};

RHSParametrization param_for(int id, double r = M_PI / 8) {
  const Signature s = default_example(id).sig;
  const ExampleSpec spec =
      id == 1 ? make_example(1, s, default_seed(1, s, r)) : default_example(id);
  return example_parametrization(spec);
}
}  // namespace

TEST_CASE("transport along a geodesic is constant") {
  const Signature s(3, 1);
  const AmbientVector q = unit(4, 3), v = unit(4, 2);
  const RHSParametrization p = transport_basis(geodesic_curve(s, q, v), 0.0, -1.0, 1.0);
  CHECK(p.epsilon1() == 1);
  CHECK(p.leaf_index() == s.p());
  REQUIRE(p.frame().front().size() == 4);
  const VectorField& z0 = p.frame()[p.frame().size() / 2];
  for (const auto& f : p.frame()) {
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(max_abs(f[i] - z0[i]) < 1e-10);
  }
  for (const auto& z : z0) {
    CHECK(std::abs(real_metric(s, z, v)) < 1e-12);
    CHECK(std::abs(real_metric(s, z, I * v)) < 1e-12);
  }
  const std::vector<double> zero(4, 0.0);
  CHECK(max_abs(p.transported(0.37, zero)) < 1e-15);
  CHECK(p.gram_drift() < 1e-10);

  const RHSParametrization tl = transport_basis(geodesic_curve(s, q, unit(4, 0)), 0.0, -1.0, 1.0);
  CHECK(tl.epsilon1() == -1);
  CHECK(tl.leaf_index() == s.p() - 1);

  CHECK_THROWS_AS(transport_basis(geodesic_curve(s, q, unit(4, 0) + unit(4, 1)), 0.0, -1.0, 1.0),
                  CausalCharacterError);
  CHECK_THROWS_AS(transport_basis(geodesic_curve(s, q, 2.0 * v), 0.0, -1.0, 1.0), SpeedError);
}

TEST_CASE("RHS parametrization of example 1") {
  const RHSParametrization p = param_for(1);
  const Signature& s = p.signature();
  CHECK(p.gram_drift() < 1e-8);
  CHECK(p.orthogonality_defect() < 1e-8);
  const std::size_t m = p.frame().front().size();
  CHECK(m == static_cast<std::size_t>(2 * s.n() - 2));

  Rng rng(40);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (double t : {-0.8, 0.0, 0.55}) {
    const std::vector<double> zero(m, 0.0);
    const ProjectivePoint base = canonicalize(s, p.base()(t));
    CHECK(p.evaluate(t, zero).distance(base) < 1e-9);
    const TotallyGeodesicLeaf leaf =
        complex_hyperplane_leaf(tangent_at(s, p.base()(t), p.base().derivative(t, 1)));
    for (int k = 0; k < 5; ++k) {
      std::vector<double> c(m);
      for (auto& x : c) x = u(rng);
      CHECK(leaf.membership_residual(p.evaluate(t, c).rep()) < 1e-8);
    }
  }
  const std::vector<double> zero(m, 0.0);
  CHECK_THROWS_AS(p.evaluate(p.s_max() + 1.0, zero), ChartError);
}

TEST_CASE("almost contact identities") {
  for (int id : {1, 3}) {
    const RHSParametrization p = param_for(id);
    const Signature& s = p.signature();
    const std::vector<double> u{0.1, 0.05, -0.1, 0.2, 0.0};
    const AlmostContactFrame f = almost_contact_at(p, u);
    CHECK(f.epsilon == example_epsilon(id));
    CHECK(std::abs(real_metric(s, f.N, f.N) - f.epsilon) < 1e-10);
    CHECK(std::abs(f.eta(f.xi) - f.epsilon) < 1e-10);
    CHECK(max_abs(f.phi(f.xi)) < 1e-10);
    for (const auto& x : f.tangents) {
      CHECK(std::abs(real_metric(s, x, f.N)) < 1e-7 * (1 + x.norm()));
      const AmbientVector lhs = f.phi(f.phi(x));
      const AmbientVector rhs = -x + f.epsilon * f.eta(x) * f.xi;
      CHECK(max_abs(lhs - rhs) < 1e-8 * (1 + x.norm()));
    }
  }
}

TEST_CASE("normal matches the closed form on the base curve") {
  for (int id : {1, 2, 3, 4}) {
    const ExampleSpec spec = default_example(id);
    const RHSParametrization p = example_parametrization(spec);
    const std::vector<double> u(p.dimension(), 0.0);
    const AlmostContactFrame f = almost_contact_at(p, u);
    const ExampleFields ex = example_fields(spec, spec.t0, spec.seed_z);
    const Complex ph = f.q.dot(ex.point) / std::abs(f.q.dot(ex.point));
    // The frames agree up to the phase of the representative and a sign.
    const double d1 = max_abs(ph * f.N - ex.N_hat), d2 = max_abs(ph * f.N + ex.N_hat);
    CHECK(std::min(d1, d2) < 1e-6);
    CHECK(f.epsilon == ex.epsilon);
  }
}

TEST_CASE("shape operator of a minimal ruled example") {
  const RHSParametrization p = param_for(1);
  const std::vector<double> u{0.2, 0.1, -0.15, 0.05, 0.1};
  const ShapeData d = shape_data(p, u);
  CHECK((d.s - d.s.transpose()).cwiseAbs().maxCoeff() < 1e-6);
  const ShapeReport r = shape_report(d);
  CHECK(std::abs(r.mu) < 1e-6);
  CHECK(r.dd_block_max < 1e-6);
  CHECK(r.symmetry_defect < 1e-6);
  CHECK(std::abs(r.g_trace) < 1e-5);
  CHECK(r.form == ShapeForm::RankTwo_NonNullU);
  CHECK(r.rank == 2);
  // A xi = U, A U = eps eps_U g(U,U) xi (rank two on span{xi, U}).
  const Signature& s = p.signature();
  const AmbientVector axi = d.apply(d.frame.xi);
  CHECK(max_abs(axi - r.U) < 1e-6);
  const double guu = real_metric(s, r.U, r.U);
  const AmbientVector au = d.apply(r.U);
  CHECK(max_abs(au - d.frame.epsilon * guu * d.frame.xi) < 1e-5);
  CHECK(max_abs(d.apply(d.frame.phi(r.U))) < 1e-5);
}

TEST_CASE("lightlike U at the case c seed") {
  // |z_n| = 1 only along the base curve, so U is lightlike there alone.
  const RHSParametrization p = param_for(1, M_PI / 4);
  const std::vector<double> u{0.1, 0.0, 0.0, 0.0, 0.0};
  const ShapeData d = shape_data(p, u);
  const ShapeReport r = shape_report(d);
  CHECK(r.U_character == CausalCharacter::Lightlike);
  CHECK(r.form == ShapeForm::LightlikeU);
  CHECK(std::abs(r.mu) < 1e-6);
  CHECK(r.U.norm() > 1e-3);
  CHECK(max_abs(d.apply(r.U)) < 1e-5);
  CHECK(max_abs(d.apply(d.frame.phi(r.U))) < 1e-5);
}

TEST_CASE("geodesic sphere control") {
  const Signature s(3, 1);
  const double r = 0.5;
  const GeodesicSphere sphere(s, r);
  const std::vector<double> u(sphere.dimension(), 0.0);
  const ShapeReport rep = shape_operator(sphere, u);
  CHECK(std::abs(rep.mu) == doctest::Approx(2.0 / std::tan(2 * r)).epsilon(1e-5));
  CHECK(rep.dd_block_max == doctest::Approx(1.0 / std::tan(r)).epsilon(1e-5));
  const MinimalityReport m = minimality(sphere, {u});
  CHECK_FALSE(m.minimal);
  CHECK(codazzi_residual(sphere, u) < 1e-4);
  CHECK(nabla_xi_residual(sphere, u) < 1e-6);
  CHECK_THROWS_AS(minimality(sphere, {}), EmptyGridError);
}

TEST_CASE("verification over a grid") {
  const ExampleSpec spec = default_example(2);
  const RHSParametrization p = example_parametrization(spec);
  const auto grid = example_grid(spec, 3, 2, 2);
  CHECK(grid.size() == 12);
  const RuledReport rr = verify_ruled(p, grid, 5);
  CHECK(rr.pass);
  CHECK(rr.samples == grid.size());
  CHECK(rr.codazzi_samples == 3);
  CHECK(minimality(p, grid).minimal);
  CHECK(minimality(p, {grid.front()}).minimal);
}

TEST_CASE("degenerate immersions") {
  const Signature s(3, 1);
  const AmbientVector q = unit(4, 3);
  // Fifth chart direction duplicates the fourth.
  const AffineImmersion flat(s, q, {unit(4, 2), I * unit(4, 2), unit(4, 1), I * unit(4, 1), unit(4, 1)});
  const std::vector<double> u(5, 0.0);
  CHECK_THROWS_AS(almost_contact_at(flat, u), ImmersionError);
  // Tangent space N^perp with N = e_0 + e_1 lightlike.
  const AmbientVector nl = unit(4, 0) + unit(4, 1);
  const AffineImmersion null(s, q, {unit(4, 2), I * unit(4, 2), nl, I * nl, I * (unit(4, 0) - unit(4, 1))});
  CHECK_THROWS_AS(almost_contact_at(null, u), DegenerateHypersurfaceError);
}

TEST_CASE("classification trichotomy") {
  const Signature s(3, 1);
  {
    const AmbientVector z = AmbientVector::Unit(3, 2);
    const Classification c = classify_minimal_ruled(example_parametrization(make_example(1, s, z)));
    CHECK(c.which == RuledCase::CaseA_Geodesic);
    CHECK(c.eps1 == 1);
  }
  {
    const Classification c = classify_minimal_ruled(param_for(1));
    CHECK(c.which == RuledCase::CaseB_TotallyRealCircle);
    CHECK(c.kappa1 == doctest::Approx(1.55377).epsilon(1e-5));
    CHECK(c.kind == LeafKind::RP2);
    CHECK(c.xi_alignment < 1e-5);
  }
  {
    const Classification c = classify_minimal_ruled(param_for(1, M_PI / 2));
    CHECK(c.which == RuledCase::CaseB_TotallyRealCircle);
    CHECK(c.eps2 == -1);
    CHECK(c.kind == LeafKind::S2_1);
    CHECK(c.kappa1 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-5));
  }
  {
    const Classification c = classify_minimal_ruled(param_for(1, M_PI / 4));
    CHECK(c.which == RuledCase::CaseC_NonFrenet);
    CHECK(c.kind == LeafKind::B3_1);
  }
  {
    const Classification c = classify_minimal_ruled(param_for(4));
    CHECK(c.which == RuledCase::CaseB_TotallyRealCircle);
    CHECK(c.eps1 == -1);
    CHECK(c.kind == LeafKind::H2_2);
  }
}
