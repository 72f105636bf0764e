#include "pseudocp/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pseudocp {

namespace {

template <class T>
std::vector<T> diff_impl(const std::vector<T>& v, double h) {
  const std::size_t m = v.size();
  if (m < 3) throw SamplingError("need at least 3 samples to differentiate");
  std::vector<T> out(m);
  if (m < 5) {
    for (std::size_t i = 1; i + 1 < m; ++i) out[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    out[m - 1] = (3.0 * v[m - 1] - 4.0 * v[m - 2] + v[m - 3]) / (2.0 * h);
    return out;
  }
  for (std::size_t i = 2; i + 2 < m; ++i) {
    out[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
  }
  out[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * h);
  out[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / (12.0 * h);
  const std::size_t a = m - 1, b = m - 2;
  out[a] = (25.0 * v[a] - 48.0 * v[a - 1] + 36.0 * v[a - 2] - 16.0 * v[a - 3] + 3.0 * v[a - 4]) /
           (12.0 * h);
  out[b] = (3.0 * v[b + 1] + 10.0 * v[b] - 18.0 * v[b - 1] + 6.0 * v[b - 2] - v[b - 3]) /
           (12.0 * h);
  return out;
}

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

struct Window {
  std::size_t lo, hi;  // [lo, hi)
};

Window interior(std::size_t size, std::size_t margin) {
  if (size <= 2 * margin) return {0, size};
  return {margin, size - margin};
}

// A third difference amplifies round-off by the size of the representatives.
double representative_scale(const SampledCurve& c) {
  double m = 1.0;
  for (const auto& z : c.lifts()) m = std::max(m, z.norm());
  return m;
}

}  // namespace

LiftedCurve::LiftedCurve(Signature sig, Eval f, double fd_step)
    : sig_(sig), f_(std::move(f)), h_(fd_step) {}

LiftedCurve::LiftedCurve(Signature sig, Eval f, Eval d1, Eval d2, Eval d3)
    : sig_(sig), f_(std::move(f)), d1_(std::move(d1)), d2_(std::move(d2)),
      d3_(std::move(d3)), h_(1e-3) {}

AmbientVector LiftedCurve::derivative(double s, int order) const {
  if (order == 0) return f_(s);
  if (d1_) {
    switch (order) {
      case 1: return d1_(s);
      case 2: return d2_(s);
      case 3: return d3_(s);
      default: break;
    }
    throw DimensionError("derivative order must be 0..3");
  }
  const double h = h_;
  switch (order) {
    case 1:
      return (f_(s - 2 * h) - 8.0 * f_(s - h) + 8.0 * f_(s + h) - f_(s + 2 * h)) / (12.0 * h);
    case 2:
      return (-f_(s - 2 * h) + 16.0 * f_(s - h) - 30.0 * f_(s) + 16.0 * f_(s + h) -
              f_(s + 2 * h)) /
             (12.0 * h * h);
    case 3: {
      // A wider step keeps round-off below the truncation error.
      const double k = std::max(h, 1e-2);
      return (-f_(s + 3 * k) + 8.0 * f_(s + 2 * k) - 13.0 * f_(s + k) + 13.0 * f_(s - k) -
              8.0 * f_(s - 2 * k) + f_(s - 3 * k)) /
             (8.0 * k * k * k);
    }
    default: break;
  }
  throw DimensionError("derivative order must be 0..3");
}

SampledCurve::SampledCurve(Signature sig, std::vector<double> params, VectorField lifts)
    : sig_(sig), params_(std::move(params)), lifts_(std::move(lifts)), step_(0.0) {
  if (params_.size() != lifts_.size()) throw SamplingError("params and lifts differ in length");
  if (params_.size() < 3) throw SamplingError("a sampled curve needs at least 3 samples");
  step_ = (params_.back() - params_.front()) / static_cast<double>(params_.size() - 1);
  if (!(step_ > 0.0)) throw SamplingError("params must be increasing");
  for (std::size_t i = 1; i < params_.size(); ++i) {
    if (std::abs(params_[i] - params_[i - 1] - step_) > 1e-9 * std::max(1.0, step_ * 1e3)) {
      throw SamplingError("params must be uniformly spaced");
    }
  }
  for (const auto& z : lifts_) {
    if (z.size() != sig_.dim()) throw DimensionError("lift has wrong length");
  }
}

std::vector<ProjectivePoint> SampledCurve::points() const {
  std::vector<ProjectivePoint> out;
  out.reserve(lifts_.size());
  for (const auto& z : lifts_) out.push_back(canonicalize(sig_, z));
  return out;
}

double SampledCurve::horizontality_defect(std::size_t margin) const {
  const VectorField d = differentiate(lifts_, step_);
  const Window w = interior(size(), margin);
  double out = 0.0;
  for (std::size_t i = w.lo; i < w.hi; ++i) {
    out = std::max(out, std::abs(real_metric(sig_, d[i], jmul(lifts_[i]))));
  }
  return out;
}

SampledCurve SampledCurve::reversed() const {
  std::vector<double> p(params_.rbegin(), params_.rend());
  for (auto& s : p) s = -s;
  return SampledCurve(sig_, std::move(p), VectorField(lifts_.rbegin(), lifts_.rend()));
}

SampledCurve sample_curve(const LiftedCurve& c, double s0, double s1, std::size_t count) {
  if (count < 3) throw SamplingError("need at least 3 samples");
  std::vector<double> params(count);
  VectorField lifts(count);
  for (std::size_t i = 0; i < count; ++i) {
    params[i] = s0 + (s1 - s0) * static_cast<double>(i) / static_cast<double>(count - 1);
    lifts[i] = c(params[i]);
  }
  return SampledCurve(c.signature(), std::move(params), std::move(lifts));
}

VectorField differentiate(const VectorField& v, double step) { return diff_impl(v, step); }

VectorField velocity(const SampledCurve& c) {
  const VectorField d = differentiate(c.lifts(), c.step());
  VectorField out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    out[i] = horizontal_project(c.signature(), c.lifts()[i], d[i], 1e-8);
  }
  return out;
}

VectorField covariant_derivative(const SampledCurve& c, const VectorField& v) {
  if (v.size() != c.size()) throw SamplingError("field and curve differ in length");
  const VectorField dz = differentiate(c.lifts(), c.step());
  const VectorField dv = differentiate(v, c.step());
  VectorField out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = covariant_derivative_lift(c.signature(), c.lifts()[i], dz[i], v[i], dv[i]);
  }
  return out;
}

std::string_view to_string(CurveClass c) {
  switch (c) {
    case CurveClass::Geodesic: return "Geodesic";
    case CurveClass::TotallyRealCircle: return "TotallyRealCircle";
    case CurveClass::CaseC_NonFrenet: return "CaseC_NonFrenet";
    case CurveClass::Other: return "Other";
  }
  return "?";
}

double FrenetResult::kappa_mean(int k) const {
  if (k < 1 || k > static_cast<int>(curvatures.size())) return 0.0;
  const auto& v = curvatures[k - 1];
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

FrenetResult frenet_apparatus(const SampledCurve& c, const FrenetOptions& opts) {
  const Signature& sig = c.signature();
  if (c.size() < 2 * opts.margin + 5) {
    throw SamplingError("too few samples for the Frenet apparatus: " + std::to_string(c.size()));
  }
  const Window w = interior(c.size(), opts.margin);
  FrenetResult fr;

  VectorField e1 = velocity(c);
  const double eps1 = sgn(real_metric(sig, e1[(w.lo + w.hi) / 2], e1[(w.lo + w.hi) / 2]));
  for (std::size_t i = w.lo; i < w.hi; ++i) {
    const double g = real_metric(sig, e1[i], e1[i]);
    if (std::abs(g - eps1) > 1e-6) {
      throw SpeedError("curve is not unit speed: g(alpha',alpha') = " + std::to_string(g));
    }
  }
  fr.frames.push_back(std::move(e1));
  fr.signs.push_back(static_cast<int>(eps1));

  auto remainder = [&](std::size_t k) {
    // k = number of frame vectors so far; remainder of D E_k.
    VectorField r = covariant_derivative(c, fr.frames[k - 1]);
    if (k > 1) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] += fr.signs[k - 2] * fr.curvatures[k - 2][i] * fr.frames[k - 2][i];
      }
    }
    return r;
  };

  bool stopped = false;
  for (std::size_t k = 1;; ++k) {
    VectorField r = remainder(k);
    double rnorm = 0.0, light = 1.0;
    // Signs of samples that are clearly off the light cone.
    bool pos = false, neg = false;
    for (std::size_t i = w.lo; i < w.hi; ++i) {
      const double nr = r[i].norm();
      rnorm = std::max(rnorm, nr);
      const double g = real_metric(sig, r[i], r[i]);
      if (nr > 0.0) light = std::min(light, std::abs(g) / (nr * nr));
      if (std::abs(g) > opts.light_tol * nr * nr) (g > 0.0 ? pos : neg) = true;
    }
    const bool mixed = pos && neg;
    const double sign_mid = pos ? 1.0 : -1.0;
    if (rnorm <= opts.tol) {
      fr.order = static_cast<int>(k);
      fr.system_residual = rnorm;
      stopped = true;
      break;
    }
    if (static_cast<int>(k) >= opts.max_order) {
      fr.order = static_cast<int>(k);
      fr.system_residual = rnorm;
      break;
    }
    if (light <= opts.light_tol || mixed) {
      fr.order = static_cast<int>(k);
      if (k == 1 && !mixed) {
        const VectorField dr = covariant_derivative(c, r);
        double dnorm = 0.0;
        for (std::size_t i = w.lo; i < w.hi; ++i) dnorm = std::max(dnorm, dr[i].norm());
        fr.classification = dnorm <= opts.tol * representative_scale(c)
                                ? CurveClass::CaseC_NonFrenet
                                : CurveClass::Other;
      }
      fr.lightlike_remainder = std::move(r);
      return fr;
    }
    std::vector<double> kappa(r.size());
    VectorField next(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      kappa[i] = std::sqrt(std::abs(real_metric(sig, r[i], r[i])));
      next[i] = sign_mid * r[i] / kappa[i];
    }
    fr.curvatures.push_back(std::move(kappa));
    fr.frames.push_back(std::move(next));
    fr.signs.push_back(static_cast<int>(sign_mid));
  }

  if (!stopped) {
    fr.classification = CurveClass::Other;
  } else if (fr.order == 1) {
    fr.classification = CurveClass::Geodesic;
  } else if (fr.order == 2 && is_totally_real_circle(fr, c, opts.margin).is_circle) {
    fr.classification = CurveClass::TotallyRealCircle;
  } else {
    fr.classification = CurveClass::Other;
  }
  return fr;
}

CircleReport is_totally_real_circle(const FrenetResult& fr, const SampledCurve& c,
                                    std::size_t margin) {
  CircleReport rep;
  rep.order = fr.order;
  if (fr.order != 2 || fr.curvatures.empty() || fr.frames.size() < 2) return rep;
  const Window w = interior(c.size(), margin);
  const auto& k = fr.curvatures[0];
  double sum = 0.0, sq = 0.0;
  for (std::size_t i = w.lo; i < w.hi; ++i) sum += k[i];
  const double cnt = static_cast<double>(w.hi - w.lo);
  rep.kappa1 = sum / cnt;
  for (std::size_t i = w.lo; i < w.hi; ++i) sq += (k[i] - rep.kappa1) * (k[i] - rep.kappa1);
  rep.kappa_rel_stdev = std::sqrt(sq / cnt) / rep.kappa1;
  for (std::size_t i = w.lo; i < w.hi; ++i) {
    rep.torsion = std::max(rep.torsion, std::abs(real_metric(c.signature(), fr.frames[0][i],
                                                             jmul(fr.frames[1][i]))));
  }
  rep.is_circle = rep.kappa_rel_stdev <= 1e-4 && rep.torsion <= 1e-6;
  return rep;
}

CaseCReport case_c_verify(const SampledCurve& c, double tol, std::size_t margin) {
  const Signature& sig = c.signature();
  const Window w = interior(c.size(), margin);
  const VectorField f1 = velocity(c);
  const VectorField f2 = covariant_derivative(c, f1);
  const VectorField df2 = covariant_derivative(c, f2);
  CaseCReport rep;
  rep.f2_norm_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = w.lo; i < w.hi; ++i) {
    rep.f2_norm_min = std::min(rep.f2_norm_min, f2[i].norm());
    rep.f2_causal = std::max(rep.f2_causal, std::abs(real_metric(sig, f2[i], f2[i])));
    rep.f2_parallel = std::max(rep.f2_parallel, df2[i].norm());
    rep.f1_f2 = std::max(rep.f1_f2, std::abs(real_metric(sig, f1[i], f2[i])));
    rep.f1_jf2 = std::max(rep.f1_jf2, std::abs(real_metric(sig, f1[i], jmul(f2[i]))));
  }
  rep.is_case_c = rep.f2_norm_min > tol && rep.f2_causal <= tol &&
                  rep.f2_parallel <= tol * representative_scale(c) &&
                  rep.f1_f2 <= tol && rep.f1_jf2 <= tol;
  return rep;
}

namespace {

void check_case_c_data(const Signature& sig, const AmbientVector& p0, const AmbientVector& v0,
                       const AmbientVector& f2, double v0_sign) {
  constexpr double tol = 1e-10;
  for (const auto* v : {&p0, &v0, &f2}) {
    if (v->size() != sig.dim()) throw DimensionError("case-c data has wrong length");
  }
  if (std::abs(hermitian_product(sig, p0, p0) - 1.0) > tol) {
    throw FrameError("p0 must be unit spacelike");
  }
  if (std::abs(hermitian_product(sig, v0, v0) - v0_sign) > tol) {
    throw FrameError(v0_sign > 0 ? "v0 must be unit spacelike" : "v0 must be unit timelike");
  }
  if (f2.norm() <= tol || std::abs(hermitian_product(sig, f2, f2)) > tol * f2.squaredNorm()) {
    throw FrameError("F2 must be a nonzero lightlike vector");
  }
  if (std::abs(hermitian_product(sig, p0, v0)) > tol ||
      std::abs(hermitian_product(sig, p0, f2)) > tol ||
      std::abs(hermitian_product(sig, v0, f2)) > tol) {
    throw FrameError("p0, v0, F2 must be mutually orthogonal");
  }
}

}  // namespace

LiftedCurve case_c1_curve(const Signature& sig, const AmbientVector& p0,
                          const AmbientVector& v0, const AmbientVector& f2) {
  check_case_c_data(sig, p0, v0, f2, 1.0);
  const AmbientVector a = p0 - f2;
  return LiftedCurve(
      sig, [=](double s) -> AmbientVector { return f2 + std::cos(s) * a + std::sin(s) * v0; },
      [=](double s) -> AmbientVector { return -std::sin(s) * a + std::cos(s) * v0; },
      [=](double s) -> AmbientVector { return -std::cos(s) * a - std::sin(s) * v0; },
      [=](double s) -> AmbientVector { return std::sin(s) * a - std::cos(s) * v0; });
}

LiftedCurve case_c2_curve(const Signature& sig, const AmbientVector& p0,
                          const AmbientVector& v0, const AmbientVector& f2) {
  check_case_c_data(sig, p0, v0, f2, -1.0);
  const AmbientVector a = p0 + f2;
  return LiftedCurve(
      sig, [=](double s) -> AmbientVector { return std::cosh(s) * a + std::sinh(s) * v0 - f2; },
      [=](double s) -> AmbientVector { return std::sinh(s) * a + std::cosh(s) * v0; },
      [=](double s) -> AmbientVector { return std::cosh(s) * a + std::sinh(s) * v0; },
      [=](double s) -> AmbientVector { return std::sinh(s) * a + std::cosh(s) * v0; });
}

SampledCurve horizontal_lift(const Signature& sig, const std::vector<double>& params,
                             const VectorField& reps, const AmbientVector& z0) {
  if (params.size() != reps.size()) throw SamplingError("params and reps differ in length");
  VectorField z(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const double g = real_metric(sig, reps[i], reps[i]);
    if (!(g > 0.0)) throw NotProjectablePoint("representative with g(z,z) <= 0");
    z[i] = reps[i] / std::sqrt(g);
  }
  // Validates spacing before any differencing.
  const SampledCurve raw(sig, params, z);
  const double h = raw.step();
  const VectorField dz = differentiate(z, h);

  std::vector<double> rate(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    rate[i] = -real_metric(sig, dz[i], jmul(z[i]));
  }
  const std::vector<double> drate = diff_impl(rate, h);

  const Complex c0 = hermitian_product(sig, z0, z[0]);
  if (std::abs(std::abs(c0) - 1.0) > 1e-8) {
    throw LiftError("initial lift does not project to the first point of the curve");
  }
  std::vector<double> theta(z.size());
  theta[0] = std::arg(c0);
  for (std::size_t i = 1; i < z.size(); ++i) {
    // Trapezoid with endpoint-derivative correction (fourth order).
    theta[i] = theta[i - 1] + 0.5 * h * (rate[i - 1] + rate[i]) -
               h * h / 12.0 * (drate[i] - drate[i - 1]);
  }
  VectorField lifts(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) lifts[i] = std::polar(1.0, theta[i]) * z[i];
  SampledCurve out(sig, params, std::move(lifts));
  const double defect = out.horizontality_defect(2);
  if (!(defect <= 1e-6)) {
    throw LiftError("horizontal lift defect " + std::to_string(defect) + " exceeds 1e-6");
  }
  return out;
}

}  // namespace pseudocp
