#pragma once

// Closed-form fixtures for the four minimal ruled examples
//   1: (z_1..z_{n-1}, cos t z_n, sin t z_n)
//   2: (cosh t z_1, z_2..z_n, sinh t z_1)
//   3: (sinh t z_n, z_1..z_{n-1}, cosh t z_n)
//   4: (sin t z_1, cos t z_1, z_2..z_n)
// and the cross-check that pushes each one through the generic pipeline.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pseudocp/isometries.hpp"
#include "pseudocp/ruled.hpp"

namespace pseudocp {

struct ExampleSpec {
  int id = 1;
  Signature sig{3, 1};
  /// Point of the domain sphere in C^n.
  AmbientVector seed_z;
  double t0 = 0.0;
  /// Base curve parameter window |s| <= s_range.
  double s_range = 1.0;
  /// Largest leaf-chart radius used by verification grids.
  double leaf_radius = 0.3;
};

/// Number of negative coordinates of the domain sphere: p for examples 1
/// and 2, p - 1 for examples 3 and 4.
int domain_index(int id, const Signature& sig);
/// 0-based coordinate of z whose modulus sets the speed: z_n or z_1.
int key_index(int id, const Signature& sig);
/// Causal sign of the closed-form normal.
int example_epsilon(int id);

/// Throws DomainError on an unknown id, a signature outside the example's
/// range or a seed outside its domain.
ExampleSpec make_example(int id, const Signature& sig, const AmbientVector& seed,
                         double t0 = 0.0);
/// Smallest admissible signature with the standard seed.
ExampleSpec default_example(int id);
/// Standard seed for a given signature. For example 1, gamma(r) =
/// (1, 0.., sqrt2 cos r, sqrt2 sin r).
AmbientVector default_seed(int id, const Signature& sig, double r = M_PI / 8);

/// psi_hat(t, .) as an (n+1) x n matrix.
ComplexMatrix example_embedding(const ExampleSpec& spec, double t);
/// A_t with A_t psi_hat(0, z) = psi_hat(t, z).
IndefiniteUnitaryMatrix example_isometry(const ExampleSpec& spec, double t);
/// psi_hat(t, z). Throws DomainError for z outside the domain.
AmbientVector example_map(const ExampleSpec& spec, double t, const AmbientVector& z);
/// Left inverse of psi_hat(t, .) on its image.
AmbientVector example_unmap(const ExampleSpec& spec, double t, const AmbientVector& y);

struct ExampleFields {
  AmbientVector point;
  AmbientVector xi_hat;
  AmbientVector N_hat;
  /// -D_xi N_hat, the ambient derivative (not horizontal).
  AmbientVector A_xi_hat;
  int epsilon = 1;
};

ExampleFields example_fields(const ExampleSpec& spec, double t, const AmbientVector& z);

enum class ExpectedCase { A, B, C };

struct ExampleCurve {
  /// alpha(s) = psi_hat(t + s / |key|, z), with analytic derivatives.
  LiftedCurve alpha;
  /// Closed-form lift of D alpha'/ds.
  std::function<AmbientVector(double)> F;
  /// <F, F> from the closed form.
  double FF = 0.0;
  int eps1 = 1;
  ExpectedCase expected = ExpectedCase::B;
  std::optional<double> kappa1;
  std::optional<int> eps2;
  /// F2 = eps2 F / kappa1 in case b.
  std::function<AmbientVector(double)> F2;
  std::optional<LeafKind> kind;
};

ExampleCurve example_integral_curve(const ExampleSpec& spec, double t, const AmbientVector& z);
inline ExampleCurve example_integral_curve(const ExampleSpec& spec) {
  return example_integral_curve(spec, spec.t0, spec.seed_z);
}

/// Generic RHS-parametrization along the example's integral curve, anchored
/// at s = 0, transported over |s| <= s_range + margin.
RHSParametrization example_parametrization(const ExampleSpec& spec, double margin = 0.2,
                                           double step = 1e-3);

/// s_count x r_count x dir_count grid: s in [-s_range, s_range], leaf radius
/// in [0, leaf_radius] along fixed directions.
std::vector<ParamPoint> example_grid(const ExampleSpec& spec, int s_count, int r_count,
                                     int dir_count);
/// Deterministic unit directions in R^m.
std::vector<std::vector<double>> leaf_directions(int m, int count);

struct CrossCheckOptions {
  int grid_s = 5, grid_t = 5, grid_leaf = 4;
  std::size_t codazzi_stride = 10;
  int roundtrip_s = 10, roundtrip_leaf = 10;
  /// Tolerance on the D x D block, Codazzi and mu.
  double verify_tol = 1e-4;
  /// RK4 step of the transport ODE.
  double ode_step = 1e-3;
  FrenetOptions frenet;
};

struct Identity {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;
};

struct CrossCheckReport {
  ExampleSpec spec;
  std::vector<Identity> identities;
  std::string classification;  // "case_a" | "case_b" | "case_c"
  std::optional<double> kappa1;
  bool pass() const;
};

/// Runs every closed-form identity and the generic pipeline. With
/// throw_on_failure, throws CrossCheckError naming the first failure.
CrossCheckReport example_cross_check(const ExampleSpec& spec, const CrossCheckOptions& opts = {},
                                     bool throw_on_failure = false);

/// Example-independent checks: curvature normalization, SU frames, the
/// case-c closed forms, almost-contact identities and the geodesic-sphere
/// negative control. Deterministic for a fixed seed.
std::vector<Identity> invariant_suite(std::uint64_t seed = 7);

}  // namespace pseudocp
