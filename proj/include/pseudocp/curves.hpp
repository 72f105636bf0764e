#pragma once

// Curves in CP^n_p through their horizontal sphere lifts: covariant
// differentiation, the Frenet apparatus, and the curve classes behind the
// minimal ruled classification (geodesics, totally real circles, case-c
// curves in B3_1 / B3_2).

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "pseudocp/projective.hpp"

namespace pseudocp {

/// Smooth lift s -> z(s) on the pseudo-sphere. Derivatives are analytic when
/// supplied, otherwise central finite differences.
class LiftedCurve {
 public:
  using Eval = std::function<AmbientVector(double)>;

  LiftedCurve(Signature sig, Eval f, double fd_step = 1e-3);
  /// value, first, second and third derivative.
  LiftedCurve(Signature sig, Eval f, Eval d1, Eval d2, Eval d3);

  const Signature& signature() const { return sig_; }
  AmbientVector operator()(double s) const { return f_(s); }
  /// order in {0,1,2,3}.
  AmbientVector derivative(double s, int order) const;
  bool has_analytic_derivatives() const { return d1_ != nullptr; }

 private:
  Signature sig_;
  Eval f_, d1_, d2_, d3_;
  double h_;
};

using VectorField = std::vector<AmbientVector>;

/// Uniformly sampled curve carried by phase-coherent lifts.
class SampledCurve {
 public:
  /// Throws SamplingError unless params are increasing and uniformly
  /// spaced (relative 1e-9) with at least 3 samples.
  SampledCurve(Signature sig, std::vector<double> params, VectorField lifts);

  const Signature& signature() const { return sig_; }
  const std::vector<double>& params() const { return params_; }
  const VectorField& lifts() const { return lifts_; }
  std::vector<ProjectivePoint> points() const;
  double step() const { return step_; }
  std::size_t size() const { return params_.size(); }

  /// max |g(z', i z)| over interior samples.
  double horizontality_defect(std::size_t margin = 2) const;
  /// Same curve traversed backwards, s -> -s.
  SampledCurve reversed() const;

 private:
  Signature sig_;
  std::vector<double> params_;
  VectorField lifts_;
  double step_;
};

/// Samples `count` points of c on [s0, s1].
SampledCurve sample_curve(const LiftedCurve& c, double s0, double s1, std::size_t count);

/// Ambient derivative of a per-sample field: fourth-order stencils
/// (second order for fewer than five samples).
VectorField differentiate(const VectorField& v, double step);

/// Horizontal lift of alpha' at each sample.
VectorField velocity(const SampledCurve& c);

/// D V / ds along the curve for a horizontal field V.
VectorField covariant_derivative(const SampledCurve& c, const VectorField& v);

enum class CurveClass { Geodesic, TotallyRealCircle, CaseC_NonFrenet, Other };
std::string_view to_string(CurveClass c);

struct FrenetOptions {
  int max_order = 4;
  /// Remainder norm below which the Frenet iteration stops.
  double tol = 1e-6;
  /// Relative threshold on |g(R,R)| / |R|^2 for a lightlike remainder.
  double light_tol = 1e-6;
  /// Samples ignored at each end when judging.
  std::size_t margin = 4;
};

struct FrenetResult {
  int order = 1;
  /// frames[k][i] = E_{k+1} at sample i.
  std::vector<VectorField> frames;
  /// curvatures[k][i] = kappa_{k+1} at sample i.
  std::vector<std::vector<double>> curvatures;
  std::vector<int> signs;
  CurveClass classification = CurveClass::Other;
  /// F = D alpha'/ds when it was found lightlike.
  std::optional<VectorField> lightlike_remainder;
  /// max |D_s E_k + eps_{k-1} kappa_{k-1} E_{k-1} - eps_{k+1} kappa_k E_{k+1}|.
  double system_residual = 0.0;

  double kappa_mean(int k) const;
};

/// Throws SpeedError unless |g(alpha', alpha')| = 1 to 1e-6, and
/// SamplingError for too short curves.
FrenetResult frenet_apparatus(const SampledCurve& c, const FrenetOptions& opts = {});

struct CircleReport {
  bool is_circle = false;
  int order = 0;
  double kappa1 = 0.0;
  double kappa_rel_stdev = 0.0;
  /// max |g(E1, J E2)|; zero for totally real circles.
  double torsion = 0.0;
};

CircleReport is_totally_real_circle(const FrenetResult& fr, const SampledCurve& c,
                                    std::size_t margin = 4);

struct CaseCReport {
  bool is_case_c = false;
  double f2_norm_min = 0.0;     // min Euclidean |F2|
  double f2_causal = 0.0;       // max |g(F2,F2)|
  double f2_parallel = 0.0;     // max |D F2 / ds|
  double f1_f2 = 0.0;           // max |g(F1,F2)|
  double f1_jf2 = 0.0;          // max |g(F1,J F2)|
};

/// F2 := D_{F1} F1 lightlike, nonzero, parallel and totally real.
CaseCReport case_c_verify(const SampledCurve& c, double tol = 1e-6,
                          std::size_t margin = 4);

/// s -> F2 + cos(s)(p0 - F2) + sin(s) v0 with p0, v0 unit spacelike and F2
/// lightlike, all mutually g_C-orthogonal. FrameError otherwise.
LiftedCurve case_c1_curve(const Signature& sig, const AmbientVector& p0,
                          const AmbientVector& v0, const AmbientVector& f2);

/// s -> cosh(s)(p0 + F2) + sinh(s) v0 - F2 with p0 unit spacelike, v0 unit
/// timelike, F2 lightlike, all mutually g_C-orthogonal.
LiftedCurve case_c2_curve(const Signature& sig, const AmbientVector& p0,
                          const AmbientVector& v0, const AmbientVector& f2);

/// Removes the phase drift of arbitrary sphere representatives so that
/// g(z', i z) = 0, starting from z0 over reps[0]. Throws LiftError when z0
/// does not project to reps[0] or the defect exceeds 1e-6.
SampledCurve horizontal_lift(const Signature& sig, const std::vector<double>& params,
                             const VectorField& reps, const AmbientVector& z0);

}  // namespace pseudocp
