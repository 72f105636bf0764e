#include "pseudocp/examples.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pseudocp/kernels.hpp"
#include "pseudocp/random.hpp"

namespace pseudocp {

namespace {

// k-th derivative of the elementary functions in the embeddings.
double d_cos(double t, int k) {
  switch (k % 4) {
    case 0: return std::cos(t);
    case 1: return -std::sin(t);
    case 2: return -std::cos(t);
    default: return std::sin(t);
  }
}
double d_sin(double t, int k) { return d_cos(t, k + 3); }
double d_cosh(double t, int k) { return k % 2 == 0 ? std::cosh(t) : std::sinh(t); }
double d_sinh(double t, int k) { return k % 2 == 0 ? std::sinh(t) : std::cosh(t); }

// k-th t-derivative of psi_hat(t, .).
ComplexMatrix embedding(int id, int n, double t, int k) {
  ComplexMatrix l = ComplexMatrix::Zero(n + 1, n);
  const double one = k == 0 ? 1.0 : 0.0;
  switch (id) {
    case 1:
      for (int j = 0; j < n - 1; ++j) l(j, j) = one;
      l(n - 1, n - 1) = d_cos(t, k);
      l(n, n - 1) = d_sin(t, k);
      break;
    case 2:
      l(0, 0) = d_cosh(t, k);
      l(n, 0) = d_sinh(t, k);
      for (int j = 1; j < n; ++j) l(j, j) = one;
      break;
    case 3:
      l(0, n - 1) = d_sinh(t, k);
      for (int j = 0; j < n - 1; ++j) l(j + 1, j) = one;
      l(n, n - 1) = d_cosh(t, k);
      break;
    case 4:
      l(0, 0) = d_sin(t, k);
      l(1, 0) = d_cos(t, k);
      for (int j = 1; j < n; ++j) l(j + 1, j) = one;
      break;
    default:
      throw DomainError("unknown example id " + std::to_string(id));
  }
  return l;
}

double domain_metric(int negatives, const AmbientVector& z, const AmbientVector& w) {
  double out = 0.0;
  for (int j = 0; j < z.size(); ++j) {
    out += (j < negatives ? -1.0 : 1.0) * (z[j] * std::conj(w[j])).real();
  }
  return out;
}

void check_id(int id) {
  if (id < 1 || id > 4) throw DomainError("unknown example id " + std::to_string(id));
}

void check_signature(int id, const Signature& sig) {
  const int n = sig.n(), p = sig.p();
  bool ok = false;
  switch (id) {
    case 1: ok = n >= 3 && p >= 1 && p <= n - 2; break;
    case 2: ok = n >= 4 && p >= 1 && p <= n - 2; break;
    case 3:
    case 4: ok = n >= 3 && p >= 2 && p <= n - 1; break;
    default: break;
  }
  if (!ok) {
    throw DomainError("signature (" + std::to_string(n) + "," + std::to_string(p) +
                      ") is outside the range of example " + std::to_string(id));
  }
}

void check_domain(const ExampleSpec& spec, const AmbientVector& z) {
  const int n = spec.sig.n();
  if (z.size() != n) throw DomainError("domain point must have n entries");
  const int neg = domain_index(spec.id, spec.sig);
  if (std::abs(domain_metric(neg, z, z) - 1.0) > 1e-10) {
    throw DomainError("point is not on the domain sphere");
  }
  if (std::abs(z[key_index(spec.id, spec.sig)]) <= 1e-12) {
    throw DomainError("key coordinate vanishes: point outside the domain");
  }
}

double key_modulus(const ExampleSpec& spec, const AmbientVector& z) {
  return std::abs(z[key_index(spec.id, spec.sig)]);
}

Identity make_identity(std::string name, double residual, double tol, std::string detail = {}) {
  return {std::move(name), residual, tol, residual <= tol, std::move(detail)};
}

const char* case_name(ExpectedCase c) {
  switch (c) {
    case ExpectedCase::A: return "case_a";
    case ExpectedCase::B: return "case_b";
    case ExpectedCase::C: return "case_c";
  }
  return "?";
}

const char* case_name(RuledCase c) {
  switch (c) {
    case RuledCase::CaseA_Geodesic: return "case_a";
    case RuledCase::CaseB_TotallyRealCircle: return "case_b";
    case RuledCase::CaseC_NonFrenet: return "case_c";
  }
  return "?";
}

}  // namespace

int domain_index(int id, const Signature& sig) {
  check_id(id);
  return id <= 2 ? sig.p() : sig.p() - 1;
}

int key_index(int id, const Signature& sig) {
  check_id(id);
  return id == 1 || id == 3 ? sig.n() - 1 : 0;
}

int example_epsilon(int id) {
  check_id(id);
  return id <= 2 ? 1 : -1;
}

ExampleSpec make_example(int id, const Signature& sig, const AmbientVector& seed, double t0) {
  check_id(id);
  check_signature(id, sig);
  ExampleSpec spec;
  spec.id = id;
  spec.sig = sig;
  spec.seed_z = seed;
  spec.t0 = t0;
  check_domain(spec, seed);
  return spec;
}

AmbientVector default_seed(int id, const Signature& sig, double r) {
  check_id(id);
  check_signature(id, sig);
  const int n = sig.n();
  AmbientVector z = AmbientVector::Zero(n);
  z[0] = 1.0;
  switch (id) {
    case 1:
      z[n - 2] = std::sqrt(2.0) * std::cos(r);
      z[n - 1] = std::sqrt(2.0) * std::sin(r);
      break;
    case 2:
    case 4:
      z[n - 1] = std::sqrt(2.0);
      break;
    case 3:
      z[n - 2] = std::sqrt(1.75);
      z[n - 1] = 0.5;
      break;
    default: break;
  }
  return z;
}

ExampleSpec default_example(int id) {
  check_id(id);
  const Signature sig = id == 1 ? Signature(3, 1) : id == 2 ? Signature(4, 1) : Signature(3, 2);
  return make_example(id, sig, default_seed(id, sig));
}

ComplexMatrix example_embedding(const ExampleSpec& spec, double t) {
  return embedding(spec.id, spec.sig.n(), t, 0);
}

IndefiniteUnitaryMatrix example_isometry(const ExampleSpec& spec, double t) {
  const int n = spec.sig.n();
  ComplexMatrix a = ComplexMatrix::Identity(n + 1, n + 1);
  switch (spec.id) {
    case 1:
      a(n - 1, n - 1) = std::cos(t);
      a(n - 1, n) = -std::sin(t);
      a(n, n - 1) = std::sin(t);
      a(n, n) = std::cos(t);
      break;
    case 2:
    case 3:
      a(0, 0) = std::cosh(t);
      a(0, n) = std::sinh(t);
      a(n, 0) = std::sinh(t);
      a(n, n) = std::cosh(t);
      break;
    case 4:
      a(0, 0) = std::cos(t);
      a(0, 1) = std::sin(t);
      a(1, 0) = -std::sin(t);
      a(1, 1) = std::cos(t);
      break;
    default: check_id(spec.id);
  }
  return IndefiniteUnitaryMatrix(spec.sig, std::move(a), 1e-9);
}

AmbientVector example_map(const ExampleSpec& spec, double t, const AmbientVector& z) {
  check_domain(spec, z);
  return example_embedding(spec, t) * z;
}

AmbientVector example_unmap(const ExampleSpec& spec, double t, const AmbientVector& y) {
  const int n = spec.sig.n();
  const int neg = domain_index(spec.id, spec.sig);
  AmbientVector iy(y.size());
  for (int j = 0; j < y.size(); ++j) iy[j] = spec.sig.sign(j) * y[j];
  AmbientVector z = example_embedding(spec, t).adjoint() * iy;
  for (int j = 0; j < n; ++j) {
    if (j < neg) z[j] = -z[j];
  }
  return z;
}

ExampleFields example_fields(const ExampleSpec& spec, double t, const AmbientVector& z) {
  check_domain(spec, z);
  const int n = spec.sig.n();
  const double key = key_modulus(spec, z);
  ExampleFields f;
  f.point = embedding(spec.id, n, t, 0) * z;
  f.xi_hat = embedding(spec.id, n, t, 1) * z / key;
  f.N_hat = jmul(f.xi_hat);
  f.A_xi_hat = -jmul(embedding(spec.id, n, t, 2) * z) / (key * key);
  f.epsilon = example_epsilon(spec.id);
  return f;
}

ExampleCurve example_integral_curve(const ExampleSpec& spec, double t, const AmbientVector& z) {
  check_domain(spec, z);
  const int id = spec.id;
  const int n = spec.sig.n();
  const double key = key_modulus(spec, z);
  const double x = key * key;
  auto deriv = [=](int k) {
    return [=](double s) -> AmbientVector {
      return embedding(id, n, t + s / key, k) * z / std::pow(key, k);
    };
  };
  const int eps1 = example_epsilon(id);
  ExampleCurve c{LiftedCurve(spec.sig, deriv(0), deriv(1), deriv(2), deriv(3)), {}, 0.0, eps1,
                 ExpectedCase::B, {}, {}, {}, {}};
  const auto a0 = deriv(0);
  const auto a2 = deriv(2);
  c.F = [=](double s) -> AmbientVector { return a2(s) + static_cast<double>(eps1) * a0(s); };

  if (id == 1 || id == 3) {
    c.FF = 1.0 / x - 1.0;
    // |z_key| = 1 up to what the Frenet lightlike test can resolve.
    if (std::abs(x - 1.0) <= 1e-8) {
      AmbientVector rest = z;
      rest[key_index(id, spec.sig)] = 0.0;
      c.expected = rest.norm() <= 1e-8 ? ExpectedCase::A : ExpectedCase::C;
      if (c.expected == ExpectedCase::C) c.kind = eps1 > 0 ? LeafKind::B3_1 : LeafKind::B3_2;
    } else {
      c.expected = ExpectedCase::B;
      c.kappa1 = std::sqrt(std::abs(c.FF));
      c.eps2 = c.FF > 0.0 ? 1 : -1;
    }
  } else {
    c.FF = -(1.0 / x + 1.0);
    c.expected = ExpectedCase::B;
    c.kappa1 = std::sqrt(1.0 / x + 1.0);
    c.eps2 = -1;
  }
  if (c.expected == ExpectedCase::B) {
    const double k1 = *c.kappa1;
    const int e2 = *c.eps2;
    const auto f = c.F;
    c.F2 = [=](double s) -> AmbientVector { return static_cast<double>(e2) * f(s) / k1; };
    const int neg = (eps1 < 0) + (e2 < 0);
    c.kind = neg == 0 ? LeafKind::RP2 : neg == 1 ? LeafKind::S2_1 : LeafKind::H2_2;
  }
  return c;
}

RHSParametrization example_parametrization(const ExampleSpec& spec, double margin, double step) {
  const ExampleCurve c = example_integral_curve(spec);
  const double r = spec.s_range + margin;
  return transport_basis(c.alpha, 0.0, -r, r, std::nullopt, step);
}

std::vector<std::vector<double>> leaf_directions(int m, int count) {
  std::vector<std::vector<double>> out;
  for (int k = 0; k < count; ++k) {
    std::vector<double> d(static_cast<std::size_t>(m));
    double norm = 0.0;
    for (int i = 0; i < m; ++i) {
      d[static_cast<std::size_t>(i)] = std::cos(1.0 + 0.7 * k + 1.3 * i + 0.37 * i * k);
      norm += d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(i)];
    }
    for (auto& v : d) v /= std::sqrt(norm);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<ParamPoint> example_grid(const ExampleSpec& spec, int s_count, int r_count,
                                     int dir_count) {
  const int m = 2 * spec.sig.n() - 2;
  const auto dirs = leaf_directions(m, dir_count);
  std::vector<ParamPoint> grid;
  auto lin = [](double a, double b, int count, int i) {
    return count == 1 ? a : a + (b - a) * i / (count - 1);
  };
  for (int i = 0; i < s_count; ++i) {
    for (int j = 0; j < r_count; ++j) {
      for (int k = 0; k < dir_count; ++k) {
        ParamPoint u{lin(-spec.s_range, spec.s_range, s_count, i)};
        const double r = lin(0.0, spec.leaf_radius, r_count, j);
        for (double d : dirs[static_cast<std::size_t>(k)]) u.push_back(r * d);
        grid.push_back(std::move(u));
      }
    }
  }
  return grid;
}

bool CrossCheckReport::pass() const {
  return std::all_of(identities.begin(), identities.end(), [](const Identity& i) { return i.pass; });
}

CrossCheckReport example_cross_check(const ExampleSpec& spec, const CrossCheckOptions& opts,
                                     bool throw_on_failure) {
  CrossCheckReport rep;
  rep.spec = spec;
  auto& ids = rep.identities;
  const Signature& sig = spec.sig;
  const int n = sig.n();
  const int neg = domain_index(spec.id, sig);
  const std::string tag = "ex" + std::to_string(spec.id) + ".";

  // Closed-form sweep over random domain points.
  std::mt19937_64 rng(20240501 + spec.id);
  std::normal_distribution<double> nd;
  double sphere = 0.0, su = 0.0, shift = 0.0, nunit = 0.0, nhor = 0.0, axixi = 0.0, leaf = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    AmbientVector z(n);
    double g = -1.0;
    while (!(g > 0.1) || std::abs(z[key_index(spec.id, sig)]) < 0.2) {
      for (int j = 0; j < n; ++j) z[j] = Complex(nd(rng), nd(rng)) * (j < neg ? 0.4 : 1.0);
      g = domain_metric(neg, z, z);
    }
    z /= std::sqrt(g);
    const double t = 2.0 * nd(rng);
    const ExampleFields f = example_fields(spec, t, z);
    const double scale = std::max(1.0, f.point.squaredNorm());
    sphere = std::max(sphere, std::abs(real_metric(sig, f.point, f.point) - 1.0) / scale);
    const IndefiniteUnitaryMatrix a = example_isometry(spec, t);
    su = std::max({su, a.unitarity_defect() / std::max(1.0, std::cosh(2 * t)),
                   a.determinant_defect()});
    shift = std::max(shift, (a.apply(example_map(spec, 0.0, z)) - f.point).cwiseAbs().maxCoeff() /
                                std::max(1.0, f.point.norm()));
    nunit = std::max(nunit, std::abs(real_metric(sig, f.N_hat, f.N_hat) - f.epsilon) /
                              std::max(1.0, f.N_hat.squaredNorm()));
    nhor = std::max({nhor, std::abs(real_metric(sig, f.N_hat, f.point)),
                     std::abs(real_metric(sig, f.N_hat, jmul(f.point)))});
    axixi = std::max(axixi, std::abs(real_metric(sig, f.A_xi_hat, f.xi_hat)));
    // A tangent X of the domain sphere with g(X, z) = g(X, iz) = 0 spans the leaf.
    AmbientVector x(n);
    for (int j = 0; j < n; ++j) x[j] = Complex(nd(rng), nd(rng));
    Complex h = 0.0;
    for (int j = 0; j < n; ++j) h += (j < neg ? -1.0 : 1.0) * x[j] * std::conj(z[j]);
    x -= h * z;
    const AmbientVector lx = example_embedding(spec, t) * x;
    leaf = std::max({leaf, std::abs(real_metric(sig, lx, f.xi_hat)) / lx.norm(),
                     std::abs(real_metric(sig, lx, f.N_hat)) / lx.norm(),
                     std::abs(real_metric(sig, jmul(lx), f.xi_hat)) / lx.norm()});
  }
  ids.push_back(make_identity(tag + "sphere_residual", sphere, 1e-12));
  ids.push_back(make_identity(tag + "isometry_in_SU", su, 1e-10));
  ids.push_back(make_identity(tag + "isometry_moves_leaves", shift, 1e-12));
  ids.push_back(make_identity(tag + "normal_unit", nunit, 1e-12));
  ids.push_back(make_identity(tag + "normal_horizontal", nhor, 1e-12));
  ids.push_back(make_identity(tag + "A_xi_xi_closed_form", axixi, 1e-12));
  ids.push_back(make_identity(tag + "leaf_orthogonal_to_xi_N", leaf, 1e-10));

  // Integral curve and its closed-form Frenet data.
  const ExampleCurve curve = example_integral_curve(spec);
  const SampledCurve sampled = sample_curve(curve.alpha, -spec.s_range, spec.s_range, 2001);
  const VectorField vel = velocity(sampled);
  const VectorField fnum = covariant_derivative(sampled, vel);
  double hor = 0.0, ff_closed = 0.0, ff_num = 0.0, f_match = 0.0;
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    const double s = sampled.params()[i];
    const AmbientVector a = curve.alpha(s);
    const AmbientVector d = curve.alpha.derivative(s, 1);
    hor = std::max(hor, std::abs(real_metric(sig, d, jmul(a))));
    const AmbientVector f = curve.F(s);
    ff_closed = std::max(ff_closed, std::abs(real_metric(sig, f, f) - curve.FF));
    if (i >= 4 && i + 4 < sampled.size()) {
      ff_num = std::max(ff_num, std::abs(real_metric(sig, fnum[i], fnum[i]) - curve.FF));
      f_match = std::max(f_match, (fnum[i] - f).cwiseAbs().maxCoeff());
    }
  }
  ids.push_back(make_identity(tag + "alpha_horizontal", hor, 1e-12));
  ids.push_back(make_identity(tag + "FF_closed_form", ff_closed, 1e-10,
                              "<F,F> = " + std::to_string(curve.FF)));
  ids.push_back(make_identity(tag + "FF_numeric", ff_num, 1e-6));
  ids.push_back(make_identity(tag + "F_matches_closed_form", f_match, 1e-6));

  // Generic pipeline.
  const RHSParametrization p = example_parametrization(spec, 0.2, opts.ode_step);
  ids.push_back(make_identity(tag + "transport_gram_drift", p.gram_drift(), 1e-6));
  ids.push_back(make_identity(tag + "transport_orthogonality", p.orthogonality_defect(), 1e-6));

  double rt = 0.0;
  {
    const int m = 2 * n - 2;
    const auto dirs = leaf_directions(m, opts.roundtrip_leaf);
    const double key = key_modulus(spec, spec.seed_z);
    for (int i = 0; i < opts.roundtrip_s; ++i) {
      const double s = opts.roundtrip_s == 1
                           ? 0.0
                           : -spec.s_range + 2.0 * spec.s_range * i / (opts.roundtrip_s - 1);
      for (int k = 0; k < opts.roundtrip_leaf; ++k) {
        std::vector<double> c = dirs[static_cast<std::size_t>(k)];
        const double r = spec.leaf_radius * (k + 1) / opts.roundtrip_leaf;
        for (auto& v : c) v *= r;
        const AmbientVector zc = example_unmap(spec, spec.t0, p.point([&] {
          ParamPoint u{0.0};
          u.insert(u.end(), c.begin(), c.end());
          return u;
        }()));
        const ProjectivePoint want =
            canonicalize(sig, example_embedding(spec, spec.t0 + s / key) * zc);
        rt = std::max(rt, p.evaluate(s, c).distance(want));
      }
    }
  }
  ids.push_back(make_identity(tag + "rhs_round_trip", rt, 1e-6));

  const auto grid = example_grid(spec, opts.grid_s, opts.grid_t, opts.grid_leaf);
  const RuledReport ruled = verify_ruled(p, grid, opts.codazzi_stride, opts.verify_tol);
  ids.push_back(make_identity(tag + "ruled_DxD_block", ruled.dd_block_max, opts.verify_tol));
  ids.push_back(make_identity(tag + "codazzi", ruled.codazzi_max, opts.verify_tol));
  const MinimalityReport mini = minimality(p, grid, opts.verify_tol);
  ids.push_back(make_identity(tag + "minimal_mu", mini.max_mu, opts.verify_tol));

  double axi = 0.0, nmatch = 0.0, eps_mismatch = 0.0;
  for (int i = 0; i < opts.grid_s; ++i) {
    const double s = -spec.s_range + 2.0 * spec.s_range * i / std::max(1, opts.grid_s - 1);
    ParamPoint u(static_cast<std::size_t>(2 * n - 1), 0.0);
    u[0] = s;
    const ShapeData sd = shape_data(p, u);
    const AmbientVector q = sd.frame.q;
    const double key = key_modulus(spec, spec.seed_z);
    const ExampleFields f = example_fields(spec, spec.t0 + s / key, spec.seed_z);
    const AmbientVector want = horizontal_project(sig, q, f.A_xi_hat, 1e-8);
    axi = std::max(axi, (sd.apply(sd.frame.xi) - want).cwiseAbs().maxCoeff());
    nmatch = std::max(nmatch, (sd.frame.N - f.N_hat).cwiseAbs().maxCoeff());
    eps_mismatch = std::max(eps_mismatch, std::abs(sd.frame.epsilon - f.epsilon));
  }
  ids.push_back(make_identity(tag + "A_xi_matches_closed_form", axi, 1e-5));
  ids.push_back(make_identity(tag + "normal_matches_closed_form", nmatch, 1e-6));
  ids.push_back(make_identity(tag + "epsilon_matches", eps_mismatch, 0.0));

  try {
    const Classification cls = classify_minimal_ruled(p, 0.5, 1001, opts.frenet);
    rep.classification = case_name(cls.which);
    const bool same = cls.which == (curve.expected == ExpectedCase::A   ? RuledCase::CaseA_Geodesic
                                    : curve.expected == ExpectedCase::B ? RuledCase::CaseB_TotallyRealCircle
                                                                        : RuledCase::CaseC_NonFrenet);
    const bool kind_ok = !curve.kind || (cls.kind && *cls.kind == *curve.kind);
    ids.push_back(make_identity(tag + "classification", same && kind_ok ? 0.0 : 1.0, 0.0,
                                std::string(case_name(cls.which)) + " expected " +
                                    case_name(curve.expected)));
    ids.push_back(make_identity(tag + "xi_integral_curve", std::max(cls.xi_alignment, cls.chart_drift),
                                1e-6));
    if (curve.expected == ExpectedCase::B && cls.which == RuledCase::CaseB_TotallyRealCircle) {
      rep.kappa1 = cls.kappa1;
      ids.push_back(make_identity(tag + "kappa1", std::abs(cls.kappa1 - *curve.kappa1), 1e-5,
                                  "kappa1 = " + std::to_string(cls.kappa1)));
      ids.push_back(make_identity(tag + "JF1_F2_totally_real", cls.circle->torsion, 1e-6));
      ids.push_back(make_identity(tag + "eps2", cls.eps2 == *curve.eps2 ? 0.0 : 1.0, 0.0));
    }
    if (cls.case_c) {
      ids.push_back(make_identity(tag + "case_c_F2_lightlike", cls.case_c->f2_causal, 1e-6));
      ids.push_back(make_identity(tag + "case_c_F2_parallel", cls.case_c->f2_parallel, 1e-6));
    }
  } catch (const GeometryError& e) {
    rep.classification = "none";
    ids.push_back(make_identity(tag + "classification", 1.0, 0.0, e.what()));
  }

  if (throw_on_failure) {
    for (const auto& id : ids) {
      if (!id.pass) {
        throw CrossCheckError(id.name + " failed: residual " + std::to_string(id.residual) +
                              " > " + std::to_string(id.tol));
      }
    }
  }
  return rep;
}

namespace {

// Third and second derivatives by central differences with step h.
struct FdDerivs {
  AmbientVector d1, d2, d3;
};

FdDerivs fd_derivs(const LiftedCurve& c, double s, double h) {
  const AmbientVector m2 = c(s - 2 * h), m1 = c(s - h), z = c(s), p1 = c(s + h), p2 = c(s + 2 * h);
  return {(m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h),
          (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h),
          (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h)};
}

Identity case_c_identity(const std::string& name, const LiftedCurve& c, const AmbientVector& f2,
                         double sgn) {
  const Signature& sig = c.signature();
  double out = std::abs(real_metric(sig, f2, f2));
  for (int i = 0; i <= 20; ++i) {
    const double s = -1.0 + 0.1 * i;
    const AmbientVector a = c(s);
    const FdDerivs d = fd_derivs(c, s, 1e-3);
    out = std::max({out, std::abs(real_metric(sig, a, a) - 1.0),
                    std::abs(std::abs(real_metric(sig, d.d1, d.d1)) - 1.0),
                    (d.d2 - sgn * a - f2).cwiseAbs().maxCoeff(),
                    (d.d3 - sgn * d.d1).cwiseAbs().maxCoeff()});
  }
  return make_identity(name, out, 1e-6);
}

}  // namespace

std::vector<Identity> invariant_suite(std::uint64_t seed) {
  std::vector<Identity> ids;
  Rng rng(seed);

  for (const Signature sig : {Signature(2, 1), Signature(3, 1), Signature(3, 2), Signature(4, 2)}) {
    double worst = 0.0, jiso = 0.0;
    for (int k = 0; k < 50; ++k) {
      const AmbientVector q = random_sphere_point(sig, rng);
      AmbientVector x = random_horizontal(sig, q, rng);
      double gxx = real_metric(sig, x, x);
      while (std::abs(gxx) < 0.05 * x.squaredNorm()) {
        x = random_horizontal(sig, q, rng);
        gxx = real_metric(sig, x, x);
      }
      const AmbientVector jx = jmul(x);
      const double k4 = real_metric(sig, curvature_tensor(sig, x, jx, jx), x) / (gxx * gxx);
      worst = std::max(worst, std::abs(k4 - 4.0));
      const AmbientVector y = random_horizontal(sig, q, rng);
      jiso = std::max(jiso, std::abs(real_metric(sig, jx, jmul(y)) - real_metric(sig, x, y)));
    }
    const std::string tag = "invariant(" + std::to_string(sig.n()) + "," + std::to_string(sig.p()) + ").";
    ids.push_back(make_identity(tag + "holomorphic_sectional_curvature_4", worst, 1e-10));
    ids.push_back(make_identity(tag + "J_isometry", jiso, 1e-12));
  }

  for (const Signature sig : {Signature(3, 1), Signature(4, 2)}) {
    double defect = 0.0;
    for (int sign : {1, -1}) {
      for (int k = 0; k < 20; ++k) {
        const AmbientVector q = random_sphere_point(sig, rng);
        const AmbientVector eta = random_unit_horizontal(sig, q, sign, rng);
        const IndefiniteUnitaryMatrix m = frame_to_isometry(sig, q, eta);
        defect = std::max({defect, m.unitarity_defect(), m.determinant_defect()});
      }
    }
    ids.push_back(make_identity("invariant(" + std::to_string(sig.n()) + "," +
                                    std::to_string(sig.p()) + ").SU_frame",
                                defect, 1e-10));
  }

  {
    const Signature sig(3, 1);
    const AmbientVector p0 = AmbientVector::Unit(4, 3), v0 = AmbientVector::Unit(4, 2);
    const AmbientVector f2 = AmbientVector::Unit(4, 0) + AmbientVector::Unit(4, 1);
    ids.push_back(case_c_identity("invariant.case_c1_closed_form",
                                  case_c1_curve(sig, p0, v0, f2), f2, -1.0));
  }
  {
    const Signature sig(3, 2);
    const AmbientVector p0 = AmbientVector::Unit(4, 3), v0 = AmbientVector::Unit(4, 0);
    const AmbientVector f2 = AmbientVector::Unit(4, 1) + AmbientVector::Unit(4, 2);
    ids.push_back(case_c_identity("invariant.case_c2_closed_form",
                                  case_c2_curve(sig, p0, v0, f2), f2, 1.0));
  }

  for (int id : {1, 3}) {
    const ExampleSpec spec = default_example(id);
    const RHSParametrization p = example_parametrization(spec);
    std::uniform_real_distribution<double> us(-spec.s_range, spec.s_range);
    std::uniform_real_distribution<double> uc(-spec.leaf_radius / 2, spec.leaf_radius / 2);
    double algebra = 0.0, nabla = 0.0;
    for (int k = 0; k < 10; ++k) {
      ParamPoint u{us(rng)};
      for (int j = 1; j < p.dimension(); ++j) u.push_back(uc(rng));
      const AlmostContactFrame fr = almost_contact_at(p, u);
      algebra = std::max({algebra, fr.phi(fr.xi).cwiseAbs().maxCoeff(),
                          std::abs(fr.eta(fr.xi) - fr.epsilon)});
      for (const AmbientVector& x : fr.tangents) {
        const AmbientVector r = fr.phi(fr.phi(x)) + x - fr.epsilon * fr.eta(x) * fr.xi;
        algebra = std::max(algebra, r.cwiseAbs().maxCoeff() / std::max(1.0, x.norm()));
      }
      nabla = std::max(nabla, nabla_xi_residual(p, u));
    }
    const std::string tag = "invariant.ex" + std::to_string(id) + ".";
    ids.push_back(make_identity(tag + "almost_contact_structure", algebra, 1e-8));
    ids.push_back(make_identity(tag + "nabla_xi_phi_A", nabla, 1e-4));
  }

  {
    // Negative control: the geodesic sphere is neither ruled nor minimal.
    const GeodesicSphere gs(Signature(3, 1), 0.5);
    std::vector<ParamPoint> grid;
    for (int i = 0; i < 8; ++i) {
      ParamPoint u;
      for (int k = 0; k < gs.dimension(); ++k) u.push_back(0.1 * std::cos(1.0 + 0.7 * i + 1.3 * k));
      grid.push_back(std::move(u));
    }
    const RuledReport rr = verify_ruled(gs, grid, 4);
    const MinimalityReport mr = minimality(gs, grid);
    Identity dd{"control.geodesic_sphere_DxD_exceeds", rr.dd_block_max, 1e-1,
                rr.dd_block_max > 1e-1, "negative control: residual must exceed tol"};
    Identity mu{"control.geodesic_sphere_not_minimal", mr.max_mu, 1e-1, !mr.minimal,
                "negative control: residual must exceed tol"};
    ids.push_back(std::move(dd));
    ids.push_back(std::move(mu));
  }
  return ids;
}

}  // namespace pseudocp
