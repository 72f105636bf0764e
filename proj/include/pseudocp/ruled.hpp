#pragma once

// Ruled real hypersurfaces: the RHS-parametrization built from the
// transport ODE, the almost contact structure of a generic immersed
// hypersurface, its numerically measured shape operator, and the
// verification / classification passes built on top.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pseudocp/curves.hpp"
#include "pseudocp/isometries.hpp"

namespace pseudocp {

using ParamPoint = std::vector<double>;

/// A hypersurface of CP^n_p given by sphere representatives y(u),
/// u in R^{2n-1}. Representatives must depend smoothly on u.
class Immersion {
 public:
  virtual ~Immersion() = default;
  virtual const Signature& signature() const = 0;
  int dimension() const { return 2 * signature().n() - 1; }
  virtual AmbientVector point(std::span<const double> u) const = 0;
};

/// f(s, c) = exp_{alpha(s)}( sum_i c_i Z_i(s) ) with Z_i transported along
/// alpha by the rotation-free ODE.
class RHSParametrization : public Immersion {
 public:
  const Signature& signature() const override { return base_.signature(); }
  AmbientVector point(std::span<const double> u) const override;

  const LiftedCurve& base() const { return base_; }
  double s0() const { return s0_; }
  double s_min() const { return grid_.front(); }
  double s_max() const { return grid_.back(); }
  double step() const { return step_; }
  int epsilon1() const { return eps1_; }
  /// t = p when alpha is spacelike, p - 1 when timelike.
  int leaf_index() const { return leaf_index_; }
  const std::vector<double>& grid() const { return grid_; }
  /// frame()[k][i] = Z_i at grid()[k].
  const std::vector<VectorField>& frame() const { return frame_; }

  /// Z(s, sum c_i Z_i); one RK4 step from the nearest grid sample.
  AmbientVector transported(double s, std::span<const double> c) const;
  /// Pi(f(s, c)). Throws ChartError outside the chart.
  ProjectivePoint evaluate(double s, std::span<const double> c) const;

  /// max over the grid of |Gram(Z)(s) - Gram(Z)(s0)|.
  double gram_drift() const;
  /// max over the grid of |g(Z_i, alpha')|, |g(Z_i, J alpha')| and the
  /// horizontality defects |g(Z_i, alpha)|, |g(Z_i, i alpha)|.
  double orthogonality_defect() const;

 private:
  friend RHSParametrization transport_basis(const LiftedCurve&, double, double, double,
                                            const std::optional<VectorField>&, double);
  RHSParametrization(LiftedCurve base, double s0, double step, int eps1, int leaf_index)
      : base_(std::move(base)), s0_(s0), step_(step), eps1_(eps1), leaf_index_(leaf_index) {}

  LiftedCurve base_;
  double s0_;
  double step_;
  int eps1_;
  int leaf_index_;
  std::vector<double> grid_;
  std::vector<VectorField> frame_;
};

/// Real g-orthonormal basis {w, i w} of (span{alpha', J alpha'})^perp
/// taken from the complement columns of frame_to_isometry(q, velocity).
VectorField default_leaf_basis(const Signature& sig, const AmbientVector& q,
                               const AmbientVector& velocity);

/// Integrates the transport ODE with RK4 from s0 over [s_min, s_max]. The
/// base lift must be horizontal and unit speed. Throws CausalCharacterError
/// for lightlike alpha', SpeedError for non-unit speed, FrameError for a
/// bad initial basis or a non-horizontal base.
RHSParametrization transport_basis(const LiftedCurve& alpha, double s0, double s_min,
                                   double s_max,
                                   const std::optional<VectorField>& initial_basis = {},
                                   double step = 1e-3);

struct AlmostContactFrame {
  Signature sig;
  AmbientVector q;
  /// Horizontal lifts of the coordinate fields.
  VectorField tangents;
  /// Raw derivatives of the representative, d y / d u_k.
  VectorField raw_tangents;
  AmbientVector N;
  double epsilon = 1.0;
  AmbientVector xi;

  double eta(const AmbientVector& x) const { return real_metric(sig, x, xi); }
  AmbientVector phi(const AmbientVector& x) const {
    return jmul(x) - epsilon * eta(x) * N;
  }
};

/// Unit normal from the finite-difference tangent space. Throws
/// ImmersionError on rank deficiency, DegenerateHypersurfaceError when the
/// normal is lightlike. Oriented so that eps g(xi, dy/du_0) > 0.
AlmostContactFrame almost_contact_at(const Immersion& im, std::span<const double> u);

enum class ShapeForm { RankTwo_NonNullU, LightlikeU, Vanishing };
std::string_view to_string(ShapeForm f);

/// Shape operator data in the coordinate frame T_k = H(dy/du_k).
struct ShapeData {
  AlmostContactFrame frame;
  /// A T_k as horizontal ambient vectors.
  VectorField a_columns;
  /// d N / d u_k (Richardson-extrapolated central differences).
  VectorField dn;
  /// G_jk = g(T_j, T_k), S_jk = g(A T_j, T_k).
  Eigen::MatrixXd gram, s;
  /// Coefficients of xi in the T_k.
  Eigen::VectorXd xi_coords;

  /// Coefficients of a tangent vector (least squares in the T_k).
  Eigen::VectorXd coords(const AmbientVector& x) const;
  AmbientVector apply(const AmbientVector& x) const;
};

ShapeData shape_data(const Immersion& im, std::span<const double> u);

struct ShapeReport {
  /// Endomorphism matrix of A in the adapted basis {xi, e_1, ..}:
  /// column a holds the components of A b_a.
  Eigen::MatrixXd matrix;
  /// g-norms of the adapted basis vectors.
  std::vector<int> basis_signs;
  int epsilon = 1;
  double mu = 0.0;
  double lambda = 0.0;
  AmbientVector U;
  CausalCharacter U_character = CausalCharacter::Zero;
  int rank = 0;
  ShapeForm form = ShapeForm::Vanishing;
  /// max |g(A e_a, e_b)| over the D part of the basis.
  double dd_block_max = 0.0;
  double g_trace = 0.0;
  double symmetry_defect = 0.0;
};

ShapeReport shape_report(const ShapeData& d);
ShapeReport shape_operator(const Immersion& im, std::span<const double> u);

/// (nabla_X A) Y - (nabla_Y A) X - eta(X) phi Y + eta(Y) phi X - 2 g(X, phi Y) xi
/// over coordinate pairs; returns the max entry.
double codazzi_residual(const Immersion& im, std::span<const double> u, double h = 1e-2);

/// max over coordinate fields of |nabla_X xi - phi A X|.
double nabla_xi_residual(const Immersion& im, std::span<const double> u);

struct RuledReport {
  std::size_t samples = 0;
  std::size_t codazzi_samples = 0;
  double dd_block_max = 0.0;
  double codazzi_max = 0.0;
  bool pass = false;
};

/// Codazzi is evaluated on every `codazzi_stride`-th grid point.
RuledReport verify_ruled(const Immersion& im, const std::vector<ParamPoint>& grid,
                         std::size_t codazzi_stride = 10, double tol = 1e-4);

struct MinimalityReport {
  bool minimal = false;
  double max_mu = 0.0;
  double max_trace = 0.0;
};

/// Throws EmptyGridError on an empty grid.
MinimalityReport minimality(const Immersion& im, const std::vector<ParamPoint>& grid,
                            double tol = 1e-4);

enum class RuledCase { CaseA_Geodesic, CaseB_TotallyRealCircle, CaseC_NonFrenet };
std::string_view to_string(RuledCase c);

struct Classification {
  RuledCase which = RuledCase::CaseA_Geodesic;
  FrenetResult frenet;
  double kappa1 = 0.0;
  int eps1 = 1;
  int eps2 = 0;
  /// Surface kind for case b, threefold kind for case c.
  std::optional<LeafKind> kind;
  /// max |xi - alpha'| and max |c| along the re-derived integral curve.
  double xi_alignment = 0.0;
  double chart_drift = 0.0;
  std::optional<CaseCReport> case_c;
  std::optional<CircleReport> circle;
};

/// Re-derives the integral curve of xi from the hypersurface, then runs
/// the Frenet apparatus on the base curve. Throws ClassificationError when
/// no case of the trichotomy applies.
Classification classify_minimal_ruled(const RHSParametrization& p,
                                      double window = 0.5, std::size_t samples = 1001,
                                      const FrenetOptions& opts = {});

/// Trichotomy for a unit-speed horizontal curve given by samples.
Classification classify_base_curve(const SampledCurve& base, const FrenetOptions& opts = {});

/// Small geodesic sphere of radius r around e_{n+1}: a non-ruled, non-minimal
/// control hypersurface (D x D block ~ cot r, mu = 2 cot 2r).
class GeodesicSphere : public Immersion {
 public:
  GeodesicSphere(Signature sig, double radius);
  const Signature& signature() const override { return sig_; }
  AmbientVector point(std::span<const double> u) const override;
  double radius() const { return r_; }

 private:
  Signature sig_;
  double r_;
  AmbientVector u0_;
  VectorField chart_;
};

}  // namespace pseudocp
