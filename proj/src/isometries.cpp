#include "pseudocp/isometries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace pseudocp {

namespace {

constexpr double kPivotFloor = 1e-10;

Eigen::VectorXd metric_diag(const Signature& sig) {
  Eigen::VectorXd d(sig.dim());
  for (int j = 0; j < sig.dim(); ++j) d[j] = sig.sign(j);
  return d;
}

AmbientVector project_out(const Signature& sig, AmbientVector x,
                          const std::vector<AmbientVector>& basis,
                          const std::vector<double>& signs) {
  // Two passes keep the residual orthogonal to round-off.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      x -= (hermitian_product(sig, x, basis[k]) / signs[k]) * basis[k];
    }
  }
  return x;
}

}  // namespace

double unitarity_defect(const Signature& sig, const ComplexMatrix& m) {
  const Eigen::VectorXd d = metric_diag(sig);
  const ComplexMatrix id = d.cast<Complex>().asDiagonal();
  const ComplexMatrix gram = m.adjoint() * id * m - id;
  return gram.cwiseAbs().maxCoeff();
}

IndefiniteUnitaryMatrix::IndefiniteUnitaryMatrix(const Signature& sig,
                                                 ComplexMatrix m, double tol)
    : sig_(sig), m_(std::move(m)) {
  if (m_.rows() != sig.dim() || m_.cols() != sig.dim()) {
    throw DimensionError("isometry matrix has wrong shape");
  }
  const double u = unitarity_defect();
  const double d = determinant_defect();
  if (!(u <= tol) || !(d <= tol)) {
    throw FrameError("matrix is not in SU(p, n+1-p): unitarity defect " +
                     std::to_string(u) + ", determinant defect " + std::to_string(d));
  }
}

AmbientVector IndefiniteUnitaryMatrix::apply_inverse(const AmbientVector& v) const {
  const Eigen::VectorXd d = metric_diag(sig_);
  const AmbientVector w = d.cast<Complex>().asDiagonal() * v;
  return d.cast<Complex>().asDiagonal() * (m_.adjoint() * w);
}

IndefiniteUnitaryMatrix IndefiniteUnitaryMatrix::compose(
    const IndefiniteUnitaryMatrix& rhs) const {
  return IndefiniteUnitaryMatrix(sig_, m_ * rhs.m_, 1e-9);
}

IndefiniteUnitaryMatrix IndefiniteUnitaryMatrix::inverse() const {
  const Eigen::VectorXd d = metric_diag(sig_);
  const ComplexMatrix id = d.cast<Complex>().asDiagonal();
  return IndefiniteUnitaryMatrix(sig_, id * m_.adjoint() * id, 1e-9);
}

double IndefiniteUnitaryMatrix::unitarity_defect() const {
  return pseudocp::unitarity_defect(sig_, m_);
}

double IndefiniteUnitaryMatrix::determinant_defect() const {
  return std::abs(m_.determinant() - Complex{1.0, 0.0});
}

IndefiniteUnitaryMatrix complete_frame(const Signature& sig,
                                       const std::vector<PlacedVector>& placed,
                                       double tol) {
  const int dim = sig.dim();
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  std::vector<bool> used(dim, false);
  std::vector<AmbientVector> basis;
  std::vector<double> signs;

  for (const auto& pv : placed) {
    if (pv.slot < 0 || pv.slot >= dim) throw FrameError("frame slot out of range");
    if (used[pv.slot]) throw FrameError("frame slot assigned twice");
    if (pv.vec.size() != dim) throw DimensionError("frame vector has wrong length");
    const double s = sig.sign(pv.slot);
    const Complex self = hermitian_product(sig, pv.vec, pv.vec);
    if (std::abs(self - s) > tol) {
      throw FrameError("vector for slot " + std::to_string(pv.slot) +
                       " is not unit with the slot's causal sign");
    }
    for (const auto& b : basis) {
      if (std::abs(hermitian_product(sig, pv.vec, b)) > tol) {
        throw FrameError("placed frame vectors are not orthogonal");
      }
    }
    used[pv.slot] = true;
    m.col(pv.slot) = pv.vec;
    basis.push_back(pv.vec);
    signs.push_back(s);
  }

  auto free_slot = [&](double s) {
    for (int j = 0; j < dim; ++j) {
      if (!used[j] && sig.sign(j) == s) return j;
    }
    return -1;
  };

  std::vector<AmbientVector> seeds;
  for (int j = 0; j < dim; ++j) seeds.push_back(AmbientVector::Unit(dim, j));
  int largest_free = -1;
  for (int j = 0; j < dim; ++j) {
    if (!used[j]) largest_free = j;
  }

  while (static_cast<int>(basis.size()) < dim) {
    AmbientVector best;
    double best_score = 0.0;
    auto consider = [&](const AmbientVector& seed) {
      AmbientVector r = project_out(sig, seed, basis, signs);
      const double g = real_metric(sig, r, r);
      if (free_slot(g < 0.0 ? -1.0 : 1.0) < 0) return;
      if (std::abs(g) > best_score) {
        best_score = std::abs(g);
        best = std::move(r);
      }
    };
    for (const auto& seed : seeds) consider(seed);
    if (best_score < kPivotFloor) {
      for (int a = 0; a < dim; ++a) {
        for (int b = a + 1; b < dim; ++b) {
          consider(seeds[a] + seeds[b]);
          consider(seeds[a] + Complex{0.0, 1.0} * seeds[b]);
        }
      }
    }
    if (best_score < kPivotFloor) {
      throw FrameError("Gram-Schmidt breakdown while completing the frame");
    }
    const double g = real_metric(sig, best, best);
    const double s = g < 0.0 ? -1.0 : 1.0;
    const int slot = free_slot(s);
    best /= std::sqrt(std::abs(g));
    used[slot] = true;
    m.col(slot) = best;
    basis.push_back(best);
    signs.push_back(s);
  }

  if (largest_free >= 0) {
    const Complex det = m.determinant();
    m.col(largest_free) *= std::conj(det) / std::abs(det);
  } else if (std::abs(m.determinant() - Complex{1.0, 0.0}) > tol) {
    throw FrameError("fully placed frame does not have determinant 1");
  }
  return IndefiniteUnitaryMatrix(sig, std::move(m), std::max(tol, 1e-10));
}

int eta_slot(const Signature& sig, CausalCharacter c) {
  switch (c) {
    case CausalCharacter::Spacelike: return sig.n();
    case CausalCharacter::Timelike: return 0;
    default: throw CausalCharacterError("eta_hat must be spacelike or timelike");
  }
}

IndefiniteUnitaryMatrix frame_to_isometry(const Signature& sig,
                                          const AmbientVector& q,
                                          const AmbientVector& eta_hat) {
  require_sphere_point(sig, q, 1e-8);
  const CausalCharacter c = causal_character(sig, eta_hat);
  const int slot = eta_slot(sig, c);
  if (std::abs(hermitian_product(sig, eta_hat, q)) > 1e-8) {
    throw FrameError("eta_hat is not horizontal at q");
  }
  return complete_frame(sig, {{base_slot(sig), q}, {slot, eta_hat}});
}

std::string_view to_string(LeafKind k) {
  switch (k) {
    case LeafKind::ComplexHyperplane: return "ComplexHyperplane";
    case LeafKind::RP2: return "RP2";
    case LeafKind::H2_2: return "H2_2";
    case LeafKind::S2_1: return "S2_1";
    case LeafKind::B3_1: return "B3_1";
    case LeafKind::B3_2: return "B3_2";
  }
  return "?";
}

TotallyGeodesicLeaf::TotallyGeodesicLeaf(LeafKind kind, IndefiniteUnitaryMatrix isometry,
                                         int t, int model_base,
                                         std::vector<int> model_slots)
    : kind_(kind), iso_(std::move(isometry)), t_(t), base_(model_base),
      slots_(std::move(model_slots)) {}

AmbientVector TotallyGeodesicLeaf::base_point() const {
  return iso_.matrix().col(base_);
}

std::vector<AmbientVector> TotallyGeodesicLeaf::tangent_basis() const {
  std::vector<AmbientVector> out;
  for (int j : slots_) {
    if (j == base_) continue;
    const AmbientVector col = iso_.matrix().col(j);
    out.push_back(col);
    if (is_complex()) out.push_back(jmul(col));
  }
  return out;
}

AmbientVector TotallyGeodesicLeaf::point(const std::vector<double>& coords) const {
  const auto basis = tangent_basis();
  if (coords.size() != basis.size()) {
    throw DimensionError("leaf coordinates have wrong length");
  }
  AmbientVector v = AmbientVector::Zero(iso_.signature().dim());
  for (std::size_t k = 0; k < basis.size(); ++k) v += coords[k] * basis[k];
  return sphere_geodesic(iso_.signature(), base_point(), v, 1.0);
}

double TotallyGeodesicLeaf::membership_residual(const AmbientVector& y) const {
  const Signature& sig = iso_.signature();
  AmbientVector c = iso_.apply_inverse(y);
  double out = std::abs(real_metric(sig, y, y) - 1.0);
  std::vector<bool> in_model(sig.dim(), false);
  for (int j : slots_) in_model[j] = true;
  for (int j = 0; j < sig.dim(); ++j) {
    if (!in_model[j]) out = std::max(out, std::abs(c[j]));
  }
  if (!is_complex()) {
    int pivot = slots_.front();
    for (int j : slots_) {
      if (std::abs(c[j]) > std::abs(c[pivot])) pivot = j;
    }
    c *= std::conj(c[pivot]) / std::abs(c[pivot]);
    for (int j : slots_) out = std::max(out, std::abs(c[j].imag()));
  }
  return out;
}

TotallyGeodesicLeaf complex_hyperplane_leaf(const ProjectiveTangent& eta) {
  const Signature& sig = eta.at.signature();
  const double geta = real_metric(sig, eta.vec, eta.vec);
  const CausalCharacter c = causal_character(sig, eta.vec);
  if (c != CausalCharacter::Spacelike && c != CausalCharacter::Timelike) {
    throw CausalCharacterError("hyperplane normal must be spacelike or timelike");
  }
  if (std::abs(std::abs(geta) - 1.0) > 1e-8) {
    throw FrameError("hyperplane normal must be unit");
  }
  IndefiniteUnitaryMatrix m = frame_to_isometry(sig, eta.at.rep(), eta.vec);
  const int excluded = eta_slot(sig, c);
  std::vector<int> slots;
  for (int j = 0; j < sig.dim(); ++j) {
    if (j != excluded) slots.push_back(j);
  }
  const int t = c == CausalCharacter::Spacelike ? sig.p() : sig.p() - 1;
  return TotallyGeodesicLeaf(LeafKind::ComplexHyperplane, std::move(m), t,
                             base_slot(sig), std::move(slots));
}

namespace {

struct RealFrame {
  std::vector<AmbientVector> timelike;
  std::vector<AmbientVector> spacelike;
};

RealFrame orthonormalize_totally_real(const ProjectivePoint& x,
                                      const std::vector<AmbientVector>& plane) {
  const Signature& sig = x.signature();
  const AmbientVector& q = x.rep();
  const int k = static_cast<int>(plane.size());
  Eigen::MatrixXd gram(k, k);
  for (int a = 0; a < k; ++a) {
    if (plane[a].size() != sig.dim()) throw DimensionError("plane vector has wrong length");
    const double na = plane[a].norm();
    if (na == 0.0) throw PlaneError("plane spanned by a zero vector");
    if (std::abs(hermitian_product(sig, plane[a], q)) > 1e-8 * na) {
      throw PlaneError("plane vector is not horizontal at x");
    }
    for (int b = 0; b < k; ++b) {
      const Complex h = hermitian_product(sig, plane[a], plane[b]);
      if (std::abs(h.imag()) > 1e-8 * na * plane[b].norm()) {
        throw PlaneError("plane is not totally real");
      }
      gram(a, b) = h.real();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const Eigen::VectorXd lam = es.eigenvalues();
  const double scale = lam.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || lam.cwiseAbs().minCoeff() <= 1e-10 * scale) {
    throw PlaneError("plane is degenerate");
  }
  RealFrame out;
  for (int j = 0; j < k; ++j) {
    AmbientVector e = AmbientVector::Zero(sig.dim());
    for (int a = 0; a < k; ++a) e += es.eigenvectors()(a, j) * plane[a];
    e /= std::sqrt(std::abs(lam[j]));
    (lam[j] < 0.0 ? out.timelike : out.spacelike).push_back(e);
  }
  return out;
}

TotallyGeodesicLeaf real_leaf(const ProjectivePoint& x, LeafKind kind,
                              const RealFrame& f) {
  const Signature& sig = x.signature();
  const int n = sig.n();
  std::vector<PlacedVector> placed{{n, x.rep()}};
  std::vector<int> slots;
  const int m = static_cast<int>(f.timelike.size());
  const int k = static_cast<int>(f.spacelike.size());
  if (m > sig.p() || k + 1 > sig.dim() - sig.p()) {
    throw PlaneError("plane does not fit the signature");
  }
  for (int j = 0; j < m; ++j) {
    placed.push_back({j, f.timelike[j]});
    slots.push_back(j);
  }
  for (int j = 0; j < k; ++j) {
    placed.push_back({n - k + j, f.spacelike[j]});
    slots.push_back(n - k + j);
  }
  slots.push_back(n);
  if (static_cast<int>(placed.size()) == sig.dim()) {
    // No free column to absorb det; a global phase leaves the leaf unchanged.
    ComplexMatrix a(sig.dim(), sig.dim());
    for (const auto& pv : placed) a.col(pv.slot) = pv.vec;
    const Complex ph = std::polar(1.0, -std::arg(a.determinant()) / sig.dim());
    for (auto& pv : placed) pv.vec *= ph;
  }
  return TotallyGeodesicLeaf(kind, complete_frame(sig, placed), m, n, std::move(slots));
}

}  // namespace

TotallyGeodesicLeaf totally_real_surface(const ProjectivePoint& x,
                                         const AmbientVector& u,
                                         const AmbientVector& w) {
  const RealFrame f = orthonormalize_totally_real(x, {u, w});
  LeafKind kind = LeafKind::RP2;
  if (f.timelike.size() == 1) kind = LeafKind::S2_1;
  if (f.timelike.size() == 2) kind = LeafKind::H2_2;
  return real_leaf(x, kind, f);
}

TotallyGeodesicLeaf totally_real_threefold(const ProjectivePoint& x,
                                           const std::vector<AmbientVector>& plane) {
  if (plane.size() != 3) throw DimensionError("a 3-plane needs three vectors");
  const RealFrame f = orthonormalize_totally_real(x, plane);
  const auto index = f.timelike.size();
  if (index != 1 && index != 2) {
    throw IndexError("totally real 3-plane must have index 1 or 2, got " +
                     std::to_string(index));
  }
  return real_leaf(x, index == 1 ? LeafKind::B3_1 : LeafKind::B3_2, f);
}

}  // namespace pseudocp
