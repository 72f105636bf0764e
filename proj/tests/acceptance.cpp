// Acceptance criteria 1-10. Usage: acceptance [k ...]; no argument runs all.
// Prints one PASS/FAIL line per criterion and exits non-zero on any failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "pseudocp/examples.hpp"
#include "pseudocp/kernels.hpp"
#include "pseudocp/random.hpp"

using namespace pseudocp;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

const Signature kSigs[] = {Signature(2, 1), Signature(3, 1), Signature(3, 2), Signature(4, 2)};

Outcome c1() {
  Rng rng(101);
  double worst = 0.0;
  int count = 0;
  for (const Signature& s : kSigs) {
    for (int k = 0; k < 50; ++k, ++count) {
      const AmbientVector q = random_sphere_point(s, rng);
      AmbientVector x;
      do {
        x = random_horizontal(s, q, rng);
      } while (std::abs(real_metric(s, x, x)) < 0.05 * x.squaredNorm());
      const AmbientVector jx = jmul(x);
      const double gxx = real_metric(s, x, x);
      const double h = real_metric(s, curvature_tensor(s, x, jx, jx), x) / (gxx * gxx);
      worst = std::max(worst, std::abs(h - 4.0));
    }
  }
  return {worst <= 1e-10, std::to_string(count) + " vectors, max |H - 4| = " + sci(worst) + " (tol 1e-10)"};
}

Outcome c2() {
  Rng rng(102);
  double unit = 0.0, det = 0.0;
  int count = 0;
  for (int k = 0; k < 100; ++k, ++count) {
    const Signature& s = kSigs[k % 4];
    const int sign = k % 2 ? 1 : -1;
    const AmbientVector q = random_sphere_point(s, rng);
    const AmbientVector eta = random_unit_horizontal(s, q, sign, rng);
    const IndefiniteUnitaryMatrix m = frame_to_isometry(s, q, eta);
    unit = std::max(unit, unitarity_defect(s, m.matrix()));
    det = std::max(det, std::abs(m.matrix().determinant() - Complex(1.0, 0.0)));
  }
  return {unit <= 1e-10 && det <= 1e-10, std::to_string(count) + " frames, unitarity " + sci(unit) +
                                             ", |det - 1| " + sci(det) + " (tol 1e-10)"};
}

Outcome c3() {
  const ExampleSpec spec = default_example(1);
  const ExampleCurve ec = example_integral_curve(spec);
  const RHSParametrization p = transport_basis(ec.alpha, 0.0, -1.0, 1.0, std::nullopt, 1e-3);
  const double drift = p.gram_drift(), orth = p.orthogonality_defect();
  return {drift <= 1e-6 && orth <= 1e-6,
          "Gram drift " + sci(drift) + ", orthogonality " + sci(orth) + " (tol 1e-6)"};
}

std::vector<ShapeReport> example_reports(int id) {
  const ExampleSpec spec = default_example(id);
  return shape_reports_parallel(example_parametrization(spec), example_grid(spec, 5, 5, 4));
}

Outcome c4() {
  std::ostringstream d;
  bool pass = true;
  for (int id : {1, 2, 3, 4}) {
    double dd = 0.0;
    const auto reps = example_reports(id);
    for (const auto& r : reps) dd = std::max(dd, r.dd_block_max);
    pass = pass && dd <= 1e-4;
    d << "ex" << id << " " << sci(dd) << " (" << reps.size() << " pts); ";
  }
  const GeodesicSphere sphere(Signature(3, 1), 0.5);
  const std::vector<double> u0(sphere.dimension(), 0.0);
  std::vector<ParamPoint> grid{u0};
  for (int k = 1; k <= 4; ++k) {
    ParamPoint u = u0;
    u[static_cast<std::size_t>(k)] = 0.05 * k;
    grid.push_back(u);
  }
  double control = 1e300;
  for (const auto& r : shape_reports_parallel(sphere, grid)) control = std::min(control, r.dd_block_max);
  pass = pass && control > 0.1;
  d << "sphere control min " << sci(control) << " (must exceed 0.1); tol 1e-4";
  return {pass, d.str()};
}

Outcome c5() {
  std::ostringstream d;
  bool pass = true;
  for (int id : {1, 2, 3, 4}) {
    double mu = 0.0;
    for (const auto& r : example_reports(id)) mu = std::max(mu, std::abs(r.mu));
    pass = pass && mu <= 1e-4;
    d << "ex" << id << " mu " << sci(mu) << "; ";
  }
  Rng rng(105);
  double closed = 0.0;
  for (int id : {1, 2, 3, 4}) {
    const ExampleSpec spec = default_example(id);
    const Signature dom(spec.sig.n() - 1, domain_index(id, spec.sig));
    for (int k = 0; k < 25; ++k) {
      const AmbientVector z = random_sphere_point(dom, rng);
      for (double t : {-1.0, -0.3, 0.0, 0.4, 1.0}) {
        const ExampleFields f = example_fields(spec, t, z);
        closed = std::max(closed, std::abs(real_metric(spec.sig, f.A_xi_hat, f.xi_hat)));
      }
    }
  }
  pass = pass && closed <= 1e-12;
  d << "closed form <A xi, xi> " << sci(closed) << " (tol 1e-4 / 1e-12)";
  return {pass, d.str()};
}

Outcome c6() {
  const Signature s(3, 1);
  auto classify = [&](double r) {
    return classify_minimal_ruled(example_parametrization(make_example(1, s, default_seed(1, s, r))));
  };
  // kappa_1 from |z_n|^2 = 2 sin^2 r.
  auto kappa = [](double r) {
    const double x = 2 * std::sin(r) * std::sin(r);
    return std::sqrt(std::abs(1.0 / x - 1.0));
  };
  std::ostringstream d;
  bool pass = true;

  const Classification a = classify(M_PI / 8);
  const bool ok_a = a.which == RuledCase::CaseB_TotallyRealCircle &&
                    std::abs(a.kappa1 - kappa(M_PI / 8)) <= 1e-4 && std::abs(a.kappa1 - 1.55377) <= 1e-4 &&
                    a.frenet.signs.size() >= 2 && a.frenet.signs[0] == 1 && a.frenet.signs[1] == 1;
  d << "pi/8: " << to_string(a.which) << " kappa1 " << a.kappa1 << (ok_a ? " ok" : " BAD") << "; ";

  const Classification b = classify(M_PI / 4);
  const bool ok_b = b.which == RuledCase::CaseC_NonFrenet && b.case_c && b.case_c->f2_causal <= 1e-6 &&
                    b.case_c->f2_parallel <= 1e-6 && b.kind == LeafKind::B3_1;
  d << "pi/4: " << to_string(b.which);
  if (b.case_c) d << " |g(F2,F2)| " << sci(b.case_c->f2_causal) << " |DF2| " << sci(b.case_c->f2_parallel);
  d << (ok_b ? " ok" : " BAD") << "; ";

  const Classification c = classify(M_PI / 2);
  const bool ok_c = c.which == RuledCase::CaseB_TotallyRealCircle &&
                    std::abs(c.kappa1 - kappa(M_PI / 2)) <= 1e-4 && std::abs(c.kappa1 - 0.70711) <= 1e-4 &&
                    c.frenet.signs.size() >= 2 && c.frenet.signs[1] == -1;
  d << "pi/2: " << to_string(c.which) << " kappa1 " << c.kappa1 << (ok_c ? " ok" : " BAD");
  pass = ok_a && ok_b && ok_c;
  return {pass, d.str()};
}

Outcome c7() {
  // Literal target <F,F> = -1, measured from sampled curves.
  std::ostringstream d;
  bool pass = true;
  for (int id : {2, 4}) {
    const ExampleSpec spec = default_example(id);
    const ExampleCurve ec = example_integral_curve(spec);
    const SampledCurve c = sample_curve(ec.alpha, -1.0, 1.0, 2001);
    const VectorField F = covariant_derivative(c, velocity(c));
    double lo = 1e300, hi = -1e300, dev = 0.0;
    for (std::size_t i = 4; i + 4 < F.size(); ++i) {
      const double ff = real_metric(spec.sig, F[i], F[i]);
      lo = std::min(lo, ff);
      hi = std::max(hi, ff);
      dev = std::max(dev, std::abs(ff + 1.0));
    }
    const bool ok = dev <= 1e-8;
    pass = pass && ok;
    const double key = std::abs(spec.seed_z[key_index(id, spec.sig)]);
    d << "ex" << id << " <F,F> in [" << lo << ", " << hi << "], |<F,F> + 1| " << sci(dev)
      << (ok ? " ok" : " BAD") << " (closed form -(1/|z1|^2 + 1) = " << -(1.0 / (key * key) + 1.0) << "); ";
    if (id == 2) {
      const FrenetResult fr = frenet_apparatus(c);
      const double want = std::sqrt(1.0 / (key * key) + 1.0);
      const double got = fr.order >= 2 ? fr.kappa_mean(1) : 0.0;
      const bool ok_k = std::abs(got - want) <= 1e-5;
      pass = pass && ok_k;
      d << "ex2 kappa1 " << got << " vs " << want << (ok_k ? " ok" : " BAD") << "; ";
    }
  }
  d << "tol 1e-8 / 1e-5";
  return {pass, d.str()};
}

Outcome c8() {
  const double h = 1e-3;
  struct Fam {
    const char* name;
    Signature sig;
    AmbientVector p0, v0, f2;
    double sign;  // alpha'' + sign * alpha = F2
    double speed;
  };
  auto e = [](int d, int j) { return AmbientVector::Unit(d, j); };
  const Fam fams[] = {{"c1", Signature(3, 1), e(4, 3), e(4, 2), e(4, 0) + e(4, 1), 1.0, 1.0},
                      {"c2", Signature(3, 2), e(4, 3), e(4, 0), e(4, 1) + e(4, 2), -1.0, -1.0}};
  std::ostringstream d;
  bool pass = true;
  for (const Fam& f : fams) {
    const LiftedCurve a = f.name[1] == '1' ? case_c1_curve(f.sig, f.p0, f.v0, f.f2)
                                           : case_c2_curve(f.sig, f.p0, f.v0, f.f2);
    double sphere = 0.0, speed = 0.0, eq2 = 0.0, light = 0.0, eq3 = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const double s = -1.0 + 2.0 * k / 200;
      const AmbientVector y = a(s), yp = a(s + h), ym = a(s - h), yp2 = a(s + 2 * h), ym2 = a(s - 2 * h);
      const AmbientVector d1 = (ym2 - 8.0 * ym + 8.0 * yp - yp2) / (12 * h);
      const AmbientVector d2 = (yp - 2.0 * y + ym) / (h * h);
      const AmbientVector d3 = (yp2 - 2.0 * yp + 2.0 * ym - ym2) / (2 * h * h * h);
      const AmbientVector f2 = d2 + f.sign * y;
      sphere = std::max(sphere, std::abs(real_metric(f.sig, y, y) - 1.0));
      speed = std::max(speed, std::abs(real_metric(f.sig, d1, d1) - f.speed));
      eq2 = std::max(eq2, (f2 - f.f2).cwiseAbs().maxCoeff());
      light = std::max(light, std::abs(real_metric(f.sig, f2, f2)));
      eq3 = std::max(eq3, (d3 + f.sign * d1).cwiseAbs().maxCoeff());
    }
    const double worst = std::max({sphere, speed, eq2, light, eq3});
    pass = pass && worst <= 1e-6;
    d << f.name << ": <a,a>-1 " << sci(sphere) << " speed " << sci(speed) << " a''" << (f.sign > 0 ? "+" : "-")
      << "a-F2 " << sci(eq2) << " <F2,F2> " << sci(light) << " a'''" << (f.sign > 0 ? "+" : "-") << "a' "
      << sci(eq3) << "; ";
  }
  d << "tol 1e-6";
  return {pass, d.str()};
}

Outcome c9() {
  Rng rng(109);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  double algebra = 0.0, nabla = 0.0;
  int count = 0;
  for (int id : {1, 2, 3, 4}) {
    const ExampleSpec spec = default_example(id);
    const RHSParametrization p = example_parametrization(spec);
    const Signature& s = spec.sig;
    for (int k = 0; k < 25; ++k, ++count) {
      ParamPoint u{spec.s_range * uni(rng)};
      for (int j = 0; j < 2 * s.n() - 2; ++j) u.push_back(spec.leaf_radius / 2 * uni(rng));
      const AlmostContactFrame f = almost_contact_at(p, u);
      AmbientVector x = AmbientVector::Zero(s.dim());
      for (const auto& t : f.tangents) x += uni(rng) * t;
      x /= std::max(1.0, x.norm());
      const double scale = std::max(1.0, f.q.squaredNorm());
      algebra = std::max({algebra, f.phi(f.xi).norm() / scale, std::abs(f.eta(f.xi) - f.epsilon) / scale,
                          (f.phi(f.phi(x)) + x - f.epsilon * f.eta(x) * f.xi).norm() / scale});
      nabla = std::max(nabla, nabla_xi_residual(p, u));
    }
  }
  return {algebra <= 1e-8 && nabla <= 1e-4, std::to_string(count) + " points, algebraic " + sci(algebra) +
                                                " (tol 1e-8), nabla_X xi - phi A X " + sci(nabla) + " (tol 1e-4)"};
}

std::string run_cli_to(const std::filesystem::path& out) {
  const std::string cmd = std::string("\"") + PSEUDOCP_CLI_PATH + "\" sample 1 --grid 5x5x4 --out \"" +
                          out.string() + "\"";
  if (std::system(cmd.c_str()) != 0) return {};
  std::ifstream in(out, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Outcome c10() {
  const ExampleSpec spec = default_example(1);
  const Signature& sig = spec.sig;
  const RHSParametrization p = example_parametrization(spec);
  const int m = 2 * sig.n() - 2;
  const auto dirs = leaf_directions(m, 10);
  const double key = std::abs(spec.seed_z[key_index(1, sig)]);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double s = -spec.s_range + 2.0 * spec.s_range * i / 9;
    for (int k = 0; k < 10; ++k) {
      std::vector<double> c = dirs[static_cast<std::size_t>(k)];
      for (auto& v : c) v *= spec.leaf_radius * (k + 1) / 10;
      ParamPoint u0{0.0};
      u0.insert(u0.end(), c.begin(), c.end());
      // Domain point z of the leaf point at s = 0, then psi_hat(t(s), z).
      const AmbientVector z = example_unmap(spec, spec.t0, p.point(u0));
      const ProjectivePoint want = canonicalize(sig, example_map(spec, spec.t0 + s / key, z));
      const ProjectivePoint got = p.evaluate(s, c);
      worst = std::max(worst, (got.rep() - want.rep()).cwiseAbs().maxCoeff());
    }
  }
  const auto dir = std::filesystem::temp_directory_path() / ("pseudocp_acc_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string a = run_cli_to(dir / "a.csv"), b = run_cli_to(dir / "b.csv");
  std::filesystem::remove_all(dir);
  const bool same = !a.empty() && a == b;
  return {worst <= 1e-6 && same, "100 grid points, max canonical-coordinate gap " + sci(worst) +
                                     " (tol 1e-6); CLI CSV " + std::to_string(a.size()) + " bytes, " +
                                     (same ? "byte-identical" : "DIFFERS")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::function<Outcome()> criteria[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty()) {
    for (int k = 1; k <= 10; ++k) which.push_back(k);
  }
  bool all = true;
  for (int k : which) {
    if (k < 1 || k > 10) {
      std::cerr << "unknown criterion " << k << "\n";
      return 2;
    }
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::cout << "C" << k << (o.pass ? " PASS " : " FAIL ") << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
