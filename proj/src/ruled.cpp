#include "pseudocp/ruled.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace pseudocp {

namespace {

constexpr double kTangentStep = 1e-3;
constexpr double kNormalStep = 1e-4;
constexpr double kBasisTol = 1e-8;

struct BasePoint {
  AmbientVector z, dz, f;
};

BasePoint base_at(const LiftedCurve& a, double s) {
  BasePoint b;
  b.z = a(s);
  b.dz = a.derivative(s, 1);
  const AmbientVector d2 = a.derivative(s, 2);
  b.f = covariant_derivative_lift(a.signature(), b.z, b.dz, b.dz, d2);
  return b;
}

// Z' for the lift of the transport ODE along a horizontal unit-speed lift.
AmbientVector transport_rhs(const Signature& sig, const BasePoint& b, double eps1,
                            const AmbientVector& z) {
  const AmbientVector idz = jmul(b.dz);
  return -eps1 * real_metric(sig, z, b.f) * b.dz -
         eps1 * real_metric(sig, z, jmul(b.f)) * idz -
         real_metric(sig, z, b.dz) * b.z - real_metric(sig, z, idz) * jmul(b.z);
}

AmbientVector rk4_step(const LiftedCurve& a, double eps1, double s, double h,
                       const AmbientVector& z) {
  const Signature& sig = a.signature();
  const BasePoint b0 = base_at(a, s);
  const BasePoint bm = base_at(a, s + 0.5 * h);
  const BasePoint b1 = base_at(a, s + h);
  const AmbientVector k1 = transport_rhs(sig, b0, eps1, z);
  const AmbientVector k2 = transport_rhs(sig, bm, eps1, z + 0.5 * h * k1);
  const AmbientVector k3 = transport_rhs(sig, bm, eps1, z + 0.5 * h * k2);
  const AmbientVector k4 = transport_rhs(sig, b1, eps1, z + h * k3);
  return z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Eigen::MatrixXd gram_of(const Signature& sig, const VectorField& z) {
  const auto m = static_cast<Eigen::Index>(z.size());
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) g(i, j) = real_metric(sig, z[i], z[j]);
  }
  return g;
}

Eigen::MatrixXd realified_columns(const VectorField& v) {
  Eigen::MatrixXd m(2 * v.front().size(), static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = realify(v[k]);
  return m;
}

}  // namespace

VectorField default_leaf_basis(const Signature& sig, const AmbientVector& q,
                               const AmbientVector& velocity) {
  const CausalCharacter c = causal_character(sig, velocity);
  const IndefiniteUnitaryMatrix m = frame_to_isometry(sig, q, velocity);
  const int skip_eta = eta_slot(sig, c);
  VectorField out;
  for (int j = 0; j < sig.dim(); ++j) {
    if (j == base_slot(sig) || j == skip_eta) continue;
    const AmbientVector col = m.matrix().col(j);
    out.push_back(col);
    out.push_back(jmul(col));
  }
  return out;
}

RHSParametrization transport_basis(const LiftedCurve& alpha, double s0, double s_min,
                                   double s_max, const std::optional<VectorField>& initial,
                                   double step) {
  const Signature& sig = alpha.signature();
  if (!(s_min <= s0 && s0 <= s_max) || !(step > 0.0)) {
    throw SamplingError("transport range must contain s0 and the step must be positive");
  }
  const AmbientVector q = alpha(s0);
  require_sphere_point(sig, q, 1e-8);
  const AmbientVector v = alpha.derivative(s0, 1);
  const CausalCharacter c = causal_character(sig, v);
  if (c != CausalCharacter::Spacelike && c != CausalCharacter::Timelike) {
    throw CausalCharacterError("base curve velocity must be spacelike or timelike");
  }
  const double gvv = real_metric(sig, v, v);
  const int eps1 = gvv > 0.0 ? 1 : -1;
  if (std::abs(gvv - eps1) > 1e-6) throw SpeedError("base curve is not unit speed");
  if (std::abs(real_metric(sig, v, jmul(q))) > 1e-6) {
    throw FrameError("base curve lift is not horizontal");
  }

  VectorField z0 = initial ? *initial : default_leaf_basis(sig, q, v);
  const std::size_t m = static_cast<std::size_t>(2 * sig.n() - 2);
  if (z0.size() != m) throw FrameError("initial basis must have 2n-2 vectors");
  for (std::size_t i = 0; i < m; ++i) {
    if (z0[i].size() != sig.dim()) throw DimensionError("initial basis vector has wrong length");
    const double scale = std::max(1.0, z0[i].norm());
    if (std::abs(hermitian_product(sig, z0[i], q)) > kBasisTol * scale ||
        std::abs(hermitian_product(sig, z0[i], v)) > kBasisTol * scale) {
      throw FrameError("initial basis must be horizontal and orthogonal to alpha', J alpha'");
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double g = real_metric(sig, z0[i], z0[j]);
      const double want = i == j ? (g < 0.0 ? -1.0 : 1.0) : 0.0;
      if (std::abs(g - want) > kBasisTol) throw FrameError("initial basis is not g-orthonormal");
    }
  }

  RHSParametrization p(alpha, s0, step, eps1, eps1 > 0 ? sig.p() : sig.p() - 1);
  const auto back = static_cast<long>(std::floor((s0 - s_min) / step + 1e-9));
  const auto fwd = static_cast<long>(std::floor((s_max - s0) / step + 1e-9));
  p.grid_.resize(static_cast<std::size_t>(back + fwd + 1));
  p.frame_.resize(p.grid_.size());
  for (long k = -back; k <= fwd; ++k) p.grid_[static_cast<std::size_t>(k + back)] = s0 + k * step;

  p.frame_[static_cast<std::size_t>(back)] = z0;
  for (long k = back; k < back + fwd; ++k) {
    const auto& prev = p.frame_[static_cast<std::size_t>(k)];
    VectorField next(m);
    for (std::size_t i = 0; i < m; ++i) {
      next[i] = rk4_step(alpha, eps1, p.grid_[static_cast<std::size_t>(k)], step, prev[i]);
    }
    p.frame_[static_cast<std::size_t>(k + 1)] = std::move(next);
  }
  for (long k = back; k > 0; --k) {
    const auto& prev = p.frame_[static_cast<std::size_t>(k)];
    VectorField next(m);
    for (std::size_t i = 0; i < m; ++i) {
      next[i] = rk4_step(alpha, eps1, p.grid_[static_cast<std::size_t>(k)], -step, prev[i]);
    }
    p.frame_[static_cast<std::size_t>(k - 1)] = std::move(next);
  }
  return p;
}

AmbientVector RHSParametrization::transported(double s, std::span<const double> c) const {
  const std::size_t m = frame_.front().size();
  if (c.size() != m) throw DimensionError("leaf coordinates must have 2n-2 entries");
  if (!(s >= grid_.front() - 1e-12 && s <= grid_.back() + 1e-12)) {
    throw ChartError("s outside the transported range");
  }
  const double x = (s - grid_.front()) / step_;
  auto k = static_cast<std::size_t>(std::lround(x));
  k = std::min(k, grid_.size() - 1);
  AmbientVector z = AmbientVector::Zero(signature().dim());
  for (std::size_t i = 0; i < m; ++i) z += c[i] * frame_[k][i];
  const double h = s - grid_[k];
  if (h != 0.0) z = rk4_step(base_, eps1_, grid_[k], h, z);
  return z;
}

AmbientVector RHSParametrization::point(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != dimension()) {
    throw DimensionError("parameter point must have 2n-1 entries");
  }
  const auto c = u.subspan(1);
  double r2 = 0.0;
  for (double x : c) r2 += x * x;
  if (!(std::sqrt(r2) < M_PI / 2)) throw ChartError("leaf coordinates outside the chart");
  const AmbientVector v = transported(u[0], c);
  return sphere_geodesic(signature(), base_(u[0]), v, 1.0);
}

ProjectivePoint RHSParametrization::evaluate(double s, std::span<const double> c) const {
  std::vector<double> u{s};
  u.insert(u.end(), c.begin(), c.end());
  return canonicalize(signature(), point(u));
}

double RHSParametrization::gram_drift() const {
  const Eigen::MatrixXd g0 = gram_of(signature(), frame_[static_cast<std::size_t>(
      std::lround((s0_ - grid_.front()) / step_))]);
  double out = 0.0;
  for (const auto& f : frame_) {
    out = std::max(out, (gram_of(signature(), f) - g0).cwiseAbs().maxCoeff());
  }
  return out;
}

double RHSParametrization::orthogonality_defect() const {
  const Signature& sig = signature();
  double out = 0.0;
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    const AmbientVector q = base_(grid_[k]);
    const AmbientVector v = base_.derivative(grid_[k], 1);
    for (const auto& z : frame_[k]) {
      out = std::max({out, std::abs(real_metric(sig, z, v)),
                      std::abs(real_metric(sig, z, jmul(v))),
                      std::abs(real_metric(sig, z, q)),
                      std::abs(real_metric(sig, z, jmul(q)))});
    }
  }
  return out;
}

AlmostContactFrame almost_contact_at(const Immersion& im, std::span<const double> u) {
  const Signature& sig = im.signature();
  const int d = im.dimension();
  if (static_cast<int>(u.size()) != d) throw DimensionError("parameter point has wrong length");
  AlmostContactFrame f{sig, im.point(u), {}, {}, {}, 1.0, {}};
  require_sphere_point(sig, f.q, 1e-8);

  std::vector<double> w(u.begin(), u.end());
  const double h = kTangentStep;
  auto at = [&](int k, double off) {
    w[static_cast<std::size_t>(k)] = u[static_cast<std::size_t>(k)] + off;
    AmbientVector y = im.point(w);
    w[static_cast<std::size_t>(k)] = u[static_cast<std::size_t>(k)];
    return y;
  };
  for (int k = 0; k < d; ++k) {
    const AmbientVector dy =
        (at(k, -2 * h) - 8.0 * at(k, -h) + 8.0 * at(k, h) - at(k, 2 * h)) / (12.0 * h);
    f.raw_tangents.push_back(dy);
    f.tangents.push_back(horizontal_project(sig, f.q, dy, 1e-8));
  }

  // N solves g(N, q) = g(N, iq) = g(N, T_k) = 0: a one-dimensional kernel.
  const Eigen::VectorXd diag = real_metric_diagonal(sig);
  Eigen::MatrixXd rows(d + 2, 2 * sig.dim());
  rows.row(0) = diag.cwiseProduct(realify(f.q)).transpose();
  rows.row(1) = diag.cwiseProduct(realify(jmul(f.q))).transpose();
  for (int k = 0; k < d; ++k) {
    const AmbientVector& t = f.tangents[static_cast<std::size_t>(k)];
    rows.row(k + 2) = diag.cwiseProduct(realify(t)).transpose() / std::max(t.norm(), 1e-300);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv[sv.size() - 1] <= 1e-8 * sv[0]) {
    throw ImmersionError("tangent space has rank below 2n-1");
  }
  AmbientVector n = complexify(svd.matrixV().col(2 * sig.dim() - 1));
  const double gnn = real_metric(sig, n, n);
  if (std::abs(gnn) <= 1e-6 * n.squaredNorm()) {
    throw DegenerateHypersurfaceError("unit normal is lightlike");
  }
  f.epsilon = gnn > 0.0 ? 1.0 : -1.0;
  n /= std::sqrt(std::abs(gnn));
  if (f.epsilon * real_metric(sig, -jmul(n), f.raw_tangents[0]) < 0.0) n = -n;
  f.N = n;
  f.xi = -jmul(n);
  return f;
}

std::string_view to_string(ShapeForm f) {
  switch (f) {
    case ShapeForm::RankTwo_NonNullU: return "RankTwo_NonNullU";
    case ShapeForm::LightlikeU: return "LightlikeU";
    case ShapeForm::Vanishing: return "Vanishing";
  }
  return "?";
}

Eigen::VectorXd ShapeData::coords(const AmbientVector& x) const {
  const Eigen::MatrixXd t = realified_columns(frame.tangents);
  return t.colPivHouseholderQr().solve(realify(x));
}

AmbientVector ShapeData::apply(const AmbientVector& x) const {
  const Eigen::VectorXd c = coords(x);
  AmbientVector out = AmbientVector::Zero(x.size());
  for (std::size_t k = 0; k < a_columns.size(); ++k) out += c[static_cast<Eigen::Index>(k)] * a_columns[k];
  return out;
}

ShapeData shape_data(const Immersion& im, std::span<const double> u) {
  const Signature& sig = im.signature();
  const int d = im.dimension();
  ShapeData sd{almost_contact_at(im, u), {}, {}, {}, {}, {}};
  const auto& fr = sd.frame;

  std::vector<double> w(u.begin(), u.end());
  auto normal_at = [&](int k, double off) {
    w[static_cast<std::size_t>(k)] = u[static_cast<std::size_t>(k)] + off;
    AmbientVector n = almost_contact_at(im, w).N;
    w[static_cast<std::size_t>(k)] = u[static_cast<std::size_t>(k)];
    if (realify(n).dot(realify(fr.N)) < 0.0) n = -n;
    return n;
  };
  const double h = kNormalStep;
  for (int k = 0; k < d; ++k) {
    const AmbientVector d1 = (normal_at(k, h) - normal_at(k, -h)) / (2.0 * h);
    const AmbientVector d2 = (normal_at(k, h / 2) - normal_at(k, -h / 2)) / h;
    const AmbientVector dn = (4.0 * d2 - d1) / 3.0;
    sd.dn.push_back(dn);
    sd.a_columns.push_back(-covariant_derivative_lift(
        sig, fr.q, fr.raw_tangents[static_cast<std::size_t>(k)], fr.N, dn));
  }
  sd.gram.resize(d, d);
  sd.s.resize(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      sd.gram(j, k) = real_metric(sig, fr.tangents[j], fr.tangents[k]);
      sd.s(j, k) = real_metric(sig, sd.a_columns[j], fr.tangents[k]);
    }
  }
  sd.xi_coords = sd.coords(fr.xi);
  return sd;
}

namespace {

// g-orthonormal completion inside D in coordinate space (metric G).
// Returns coefficient columns and signs.
void complete_in(const Eigen::MatrixXd& G, const Eigen::VectorXd& xi,
                 std::vector<Eigen::VectorXd>& basis, std::vector<int>& signs, int target) {
  const auto d = G.rows();
  auto ip = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return a.dot(G * b); };
  const double exi = ip(xi, xi);
  while (static_cast<int>(basis.size()) < target) {
    Eigen::VectorXd best;
    double score = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      for (int variant = 0; variant < 2; ++variant) {
        Eigen::VectorXd r = Eigen::VectorXd::Unit(d, j);
        if (variant == 1) r += Eigen::VectorXd::Unit(d, (j + 1) % d);
        for (int pass = 0; pass < 2; ++pass) {
          r -= ip(r, xi) / exi * xi;
          for (std::size_t b = 0; b < basis.size(); ++b) {
            r -= ip(r, basis[b]) / signs[b] * basis[b];
          }
        }
        const double g = ip(r, r);
        if (std::abs(g) > score) {
          score = std::abs(g);
          best = r;
        }
      }
    }
    if (score < 1e-12) throw ImmersionError("cannot complete an orthonormal basis of D");
    const double g = ip(best, best);
    basis.push_back(best / std::sqrt(std::abs(g)));
    signs.push_back(g > 0.0 ? 1 : -1);
  }
}

}  // namespace

ShapeReport shape_report(const ShapeData& sd) {
  const Signature& sig = sd.frame.sig;
  const auto d = sd.gram.rows();
  const Eigen::MatrixXd& G = sd.gram;
  const Eigen::MatrixXd& S = sd.s;
  auto ip = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return a.dot(G * b); };
  auto to_ambient = [&](const Eigen::VectorXd& c) {
    AmbientVector v = AmbientVector::Zero(sig.dim());
    for (Eigen::Index k = 0; k < d; ++k) v += c[k] * sd.frame.tangents[static_cast<std::size_t>(k)];
    return v;
  };

  ShapeReport rep;
  rep.epsilon = static_cast<int>(sd.frame.epsilon);
  const double eps = sd.frame.epsilon;
  const Eigen::VectorXd x = sd.xi_coords;
  const Eigen::MatrixXd K = G.ldlt().solve(S.transpose());  // coefficients of A T_k
  const Eigen::VectorXd axi = K * x;
  rep.mu = ip(axi, x);
  const Eigen::VectorXd u = axi - eps * rep.mu * x;
  rep.U = to_ambient(u);
  const double uu = ip(u, u);
  const double unorm = rep.U.norm();
  if (unorm <= 1e-6) {
    rep.U_character = CausalCharacter::Zero;
  } else if (std::abs(uu) <= 1e-6 * unorm * unorm) {
    rep.U_character = CausalCharacter::Lightlike;
  } else {
    rep.U_character = uu > 0.0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
  }

  std::vector<Eigen::VectorXd> basis;
  std::vector<int> signs;
  switch (rep.U_character) {
    case CausalCharacter::Spacelike:
    case CausalCharacter::Timelike: {
      rep.form = ShapeForm::RankTwo_NonNullU;
      const int ew = uu > 0.0 ? 1 : -1;
      const Eigen::VectorXd wv = u / std::sqrt(std::abs(uu));
      rep.lambda = ew * std::sqrt(std::abs(uu));
      basis.push_back(wv);
      signs.push_back(ew);
      // phi W = J W lies in D; its coordinates come from the tangents.
      Eigen::VectorXd jw = sd.coords(jmul(to_ambient(wv)));
      const double gj = ip(jw, jw);
      if (std::abs(gj) > 1e-8) {
        basis.push_back(jw / std::sqrt(std::abs(gj)));
        signs.push_back(gj > 0.0 ? 1 : -1);
      }
      break;
    }
    case CausalCharacter::Lightlike: {
      rep.form = ShapeForm::LightlikeU;
      std::vector<Eigen::VectorXd> tmp;
      std::vector<int> tmp_signs;
      complete_in(G, x, tmp, tmp_signs, static_cast<int>(d) - 1);
      std::size_t best = tmp.size();
      for (std::size_t j = 0; j < tmp.size(); ++j) {
        if (tmp_signs[j] < 0 &&
            (best == tmp.size() || std::abs(ip(u, tmp[j])) > std::abs(ip(u, tmp[best])))) {
          best = j;
        }
      }
      if (best == tmp.size()) throw ImmersionError("lightlike U in a definite distribution");
      const Eigen::VectorXd tau = tmp[best];
      const double alpha = -ip(u, tau);
      const Eigen::VectorXd uperp = u - alpha * tau;
      const double a = std::abs(alpha);
      rep.lambda = a;
      basis.push_back(uperp / a);
      signs.push_back(1);
      basis.push_back(-(alpha / a) * tau);
      signs.push_back(-1);
      break;
    }
    default:
      rep.form = ShapeForm::Vanishing;
      break;
  }
  complete_in(G, x, basis, signs, static_cast<int>(d) - 1);

  Eigen::MatrixXd C(d, d);
  C.col(0) = x;
  for (Eigen::Index a = 1; a < d; ++a) C.col(a) = basis[static_cast<std::size_t>(a - 1)];
  rep.basis_signs.push_back(rep.epsilon);
  rep.basis_signs.insert(rep.basis_signs.end(), signs.begin(), signs.end());
  const Eigen::MatrixXd B = C.transpose() * S * C;  // B(a,c) = g(A b_a, b_c)
  rep.matrix.resize(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index c = 0; c < d; ++c) rep.matrix(c, a) = rep.basis_signs[static_cast<std::size_t>(c)] * B(a, c);
  }
  for (Eigen::Index a = 1; a < d; ++a) {
    for (Eigen::Index c = 1; c < d; ++c) rep.dd_block_max = std::max(rep.dd_block_max, std::abs(B(a, c)));
  }
  rep.g_trace = rep.matrix.trace();
  rep.symmetry_defect = (S - S.transpose()).cwiseAbs().maxCoeff();
  const Eigen::VectorXd sv = rep.matrix.jacobiSvd().singularValues();
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv[k] > std::max(1e-5 * sv[0], 1e-7)) ++rep.rank;
  }
  return rep;
}

ShapeReport shape_operator(const Immersion& im, std::span<const double> u) {
  return shape_report(shape_data(im, u));
}

double codazzi_residual(const Immersion& im, std::span<const double> u, double h) {
  const Signature& sig = im.signature();
  const int d = im.dimension();
  const ShapeData c = shape_data(im, u);
  const auto& fr = c.frame;
  // Samples at u + k h e_a for k = -2, -1, 1, 2.
  std::vector<std::vector<ShapeData>> around;
  std::vector<double> w(u.begin(), u.end());
  constexpr std::array<double, 4> offsets{-2.0, -1.0, 1.0, 2.0};
  for (int a = 0; a < d; ++a) {
    const auto ia = static_cast<std::size_t>(a);
    std::vector<ShapeData> row;
    for (double k : offsets) {
      w[ia] = u[ia] + k * h;
      row.push_back(shape_data(im, w));
    }
    w[ia] = u[ia];
    around.push_back(std::move(row));
  }
  auto tangential = [&](const AmbientVector& v) {
    return AmbientVector(v - fr.epsilon * real_metric(sig, v, fr.N) * fr.N);
  };
  // nabla_a (A T_b) as the tangential part of the ambient covariant derivative.
  auto nabla = [&](int a, int b) {
    const auto& r = around[static_cast<std::size_t>(a)];
    const AmbientVector dv = (r[0].a_columns[b] - 8.0 * r[1].a_columns[b] +
                              8.0 * r[2].a_columns[b] - r[3].a_columns[b]) /
                             (12.0 * h);
    return tangential(covariant_derivative_lift(sig, fr.q, fr.raw_tangents[a],
                                                c.a_columns[b], dv));
  };
  double out = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      const AmbientVector& x = fr.tangents[a];
      const AmbientVector& y = fr.tangents[b];
      const AmbientVector lhs = nabla(a, b) - nabla(b, a);
      const AmbientVector rhs = fr.eta(x) * fr.phi(y) - fr.eta(y) * fr.phi(x) +
                                2.0 * real_metric(sig, x, fr.phi(y)) * fr.xi;
      out = std::max(out, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return out;
}

double nabla_xi_residual(const Immersion& im, std::span<const double> u) {
  const Signature& sig = im.signature();
  const ShapeData c = shape_data(im, u);
  const auto& fr = c.frame;
  constexpr double h = 1e-3;
  std::vector<double> w(u.begin(), u.end());
  // xi at a shifted point, with the same orientation as the base normal.
  auto xi_at = [&](std::size_t k, double off) {
    w[k] = u[k] + off;
    const AlmostContactFrame f = almost_contact_at(im, w);
    w[k] = u[k];
    const double sgn = f.N.dot(fr.N).real() < 0.0 ? -1.0 : 1.0;
    return AmbientVector(sgn * f.xi);
  };
  double out = 0.0;
  for (std::size_t k = 0; k < fr.tangents.size(); ++k) {
    const AmbientVector dxi =
        (xi_at(k, -2 * h) - 8.0 * xi_at(k, -h) + 8.0 * xi_at(k, h) - xi_at(k, 2 * h)) / (12.0 * h);
    AmbientVector nx = covariant_derivative_lift(sig, fr.q, fr.raw_tangents[k], fr.xi, dxi);
    nx -= fr.epsilon * real_metric(sig, nx, fr.N) * fr.N;
    out = std::max(out, (nx - fr.phi(c.a_columns[k])).cwiseAbs().maxCoeff());
  }
  return out;
}

std::string_view to_string(RuledCase c) {
  switch (c) {
    case RuledCase::CaseA_Geodesic: return "CaseA_Geodesic";
    case RuledCase::CaseB_TotallyRealCircle: return "CaseB_TotallyRealCircle";
    case RuledCase::CaseC_NonFrenet: return "CaseC_NonFrenet";
  }
  return "?";
}

Classification classify_minimal_ruled(const RHSParametrization& p, double window,
                                      std::size_t samples, const FrenetOptions& opts) {
  const Signature& sig = p.signature();
  const int d = p.dimension();
  Classification out;

  // Integral curve of xi through f(s0, 0), solved in parameter space.
  const double lo = std::max(p.s_min() + 0.01, p.s0() - window);
  const double hi = std::min(p.s_max() - 0.01, p.s0() + window);
  auto xi_param = [&](const ParamPoint& u) {
    const ShapeData sd{almost_contact_at(p, u), {}, {}, {}, {}, {}};
    Eigen::VectorXd c = sd.coords(sd.frame.xi);
    return std::vector<double>(c.data(), c.data() + c.size());
  };
  auto check_alignment = [&](const ParamPoint& u) {
    const AlmostContactFrame fr = almost_contact_at(p, u);
    const AmbientVector a1 = horizontal_project(sig, fr.q, p.base().derivative(u[0], 1), 1e-8);
    out.xi_alignment = std::max(out.xi_alignment, (fr.xi - a1).norm());
    for (int k = 1; k < d; ++k) out.chart_drift = std::max(out.chart_drift, std::abs(u[static_cast<std::size_t>(k)]));
  };
  const double h = 0.05;
  for (int dir : {1, -1}) {
    ParamPoint u(static_cast<std::size_t>(d), 0.0);
    u[0] = p.s0();
    check_alignment(u);
    while (dir > 0 ? u[0] + h <= hi : u[0] - h >= lo) {
      auto add = [&](const ParamPoint& a, const std::vector<double>& k, double f) {
        ParamPoint r = a;
        for (int j = 0; j < d; ++j) r[j] += f * k[j];
        return r;
      };
      const double hh = dir * h;
      const auto k1 = xi_param(u);
      const auto k2 = xi_param(add(u, k1, hh / 2));
      const auto k3 = xi_param(add(u, k2, hh / 2));
      const auto k4 = xi_param(add(u, k3, hh));
      for (int j = 0; j < d; ++j) u[j] += hh / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
      check_alignment(u);
    }
  }
  if (out.xi_alignment > 1e-6 || out.chart_drift > 1e-6) {
    throw ClassificationError("base curve is not an integral curve of xi (defect " +
                              std::to_string(std::max(out.xi_alignment, out.chart_drift)) + ")");
  }

  const SampledCurve base = sample_curve(p.base(), lo, hi, samples);
  Classification c = classify_base_curve(base, opts);
  c.xi_alignment = out.xi_alignment;
  c.chart_drift = out.chart_drift;
  return c;
}

Classification classify_base_curve(const SampledCurve& base, const FrenetOptions& opts) {
  Classification out;
  out.frenet = frenet_apparatus(base, opts);
  out.eps1 = out.frenet.signs.front();
  switch (out.frenet.classification) {
    case CurveClass::Geodesic:
      out.which = RuledCase::CaseA_Geodesic;
      break;
    case CurveClass::TotallyRealCircle: {
      out.which = RuledCase::CaseB_TotallyRealCircle;
      out.circle = is_totally_real_circle(out.frenet, base, opts.margin);
      out.kappa1 = out.circle->kappa1;
      out.eps2 = out.frenet.signs[1];
      const int neg = (out.eps1 < 0) + (out.eps2 < 0);
      out.kind = neg == 0 ? LeafKind::RP2 : neg == 1 ? LeafKind::S2_1 : LeafKind::H2_2;
      break;
    }
    case CurveClass::CaseC_NonFrenet: {
      out.case_c = case_c_verify(base, opts.tol, opts.margin);
      if (!out.case_c->is_case_c) throw ClassificationError("case-c verification failed");
      out.which = RuledCase::CaseC_NonFrenet;
      out.kind = out.eps1 > 0 ? LeafKind::B3_1 : LeafKind::B3_2;
      break;
    }
    default:
      throw ClassificationError("curve fits none of the three cases");
  }
  return out;
}

GeodesicSphere::GeodesicSphere(Signature sig, double radius) : sig_(sig), r_(radius) {
  const int n = sig.n();
  u0_ = AmbientVector::Unit(n, n - 1);
  chart_.push_back(jmul(u0_));
  for (int j = 0; j < n - 1; ++j) {
    chart_.push_back(AmbientVector::Unit(n, j));
    chart_.push_back(jmul(AmbientVector::Unit(n, j)));
  }
}

AmbientVector GeodesicSphere::point(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != dimension()) {
    throw DimensionError("parameter point must have 2n-1 entries");
  }
  const int n = sig_.n();
  AmbientVector v = u0_;
  for (std::size_t k = 0; k < chart_.size(); ++k) v += u[k] * chart_[k];
  double g = 0.0;
  for (int j = 0; j < n; ++j) g += sig_.sign(j) * std::norm(v[j]);
  if (!(g > 0.0)) throw ChartError("chart point leaves the sphere");
  AmbientVector y = AmbientVector::Zero(sig_.dim());
  y.head(n) = std::sin(r_) * v / std::sqrt(g);
  y[n] = std::cos(r_);
  return y;
}

}  // namespace pseudocp
