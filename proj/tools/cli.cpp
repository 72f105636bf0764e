#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pseudocp/kernels.hpp"

namespace pseudocp::cli {

using ojson = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(what + ": " + e.what());
  }
}

template <class T>
T get_field(const nlohmann::json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw UsageError(std::string("missing field \"") + key + "\"");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("field \"") + key + "\" has the wrong type");
  }
}

AmbientVector parse_complex_vector(const nlohmann::json& arr, int dim, const char* what) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != dim) {
    throw UsageError(std::string(what) + " must be an array of " + std::to_string(dim) +
                     " complex numbers");
  }
  AmbientVector v(dim);
  for (int j = 0; j < dim; ++j) {
    const auto& c = arr[static_cast<std::size_t>(j)];
    if (c.is_number()) {
      v[j] = c.get<double>();
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      v[j] = Complex(c[0].get<double>(), c[1].get<double>());
    } else {
      throw UsageError(std::string(what) + ": complex numbers are [re, im]");
    }
  }
  return v;
}

ojson complex_json(const AmbientVector& v) {
  ojson arr = ojson::array();
  for (int j = 0; j < v.size(); ++j) arr.push_back({v[j].real(), v[j].imag()});
  return arr;
}

ojson identity_json(const Identity& id) {
  ojson o;
  o["name"] = id.name;
  o["residual"] = id.residual;
  o["tol"] = id.tol;
  o["pass"] = id.pass;
  if (!id.detail.empty()) o["detail"] = id.detail;
  return o;
}

std::string leaf_kind_name(LeafKind k) {
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

std::string fmt(double v, const char* spec = "%.17g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, v + 0.0);
  return buf;
}

void emit(const std::string& content, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) {
    out << content;
  } else {
    write_atomic(cfg.out, content);
  }
}

// Flags shared by the subcommands; empty optionals mean "not given".
struct Flags {
  std::string signature;
  std::optional<double> seed_r;
  std::optional<double> tol_light;
  std::string grid;
  std::string out;
  std::string format;
};

void add_flags(CLI::App* app, Flags& f) {
  app->add_option("--signature", f.signature, "complex dimension and index as n,p");
  app->add_option("--seed-r", f.seed_r, "curve parameter r of the Example 1 seed");
  app->add_option("--tol-light", f.tol_light, "relative lightlike threshold");
  app->add_option("--grid", f.grid, "grid densities SxTxL");
  app->add_option("--out", f.out, "output path (default: stdout)");
  app->add_option("--format", f.format, "csv | json | text");
}

RunConfig merged_config(const Flags& f) {
  RunConfig cfg;
  if (const char* path = std::getenv("PSEUDOCP_CONFIG"); path != nullptr && *path != '\0') {
    cfg = load_config(path);
  }
  if (f.tol_light) cfg.tau_light = *f.tol_light;
  if (!f.grid.empty()) {
    const auto g = parse_grid(f.grid);
    cfg.grid_s = g[0];
    cfg.grid_t = g[1];
    cfg.grid_leaf = g[2];
  }
  if (!f.out.empty()) cfg.out = f.out;
  if (!f.format.empty()) cfg.format = f.format;
  validate(cfg);
  return cfg;
}

int parse_example_id(const std::string& text) {
  if (text.size() == 1 && text[0] >= '1' && text[0] <= '4') return text[0] - '0';
  throw UsageError("unknown example id \"" + text + "\" (expected 1-4 or all)");
}

ExampleSpec build_spec(int id, const Flags& f) {
  if (f.seed_r && id != 1) throw UsageError("--seed-r only applies to example 1");
  if (f.signature.empty() && !f.seed_r) return default_example(id);
  const Signature sig = f.signature.empty() ? default_example(id).sig : parse_signature(f.signature);
  const AmbientVector seed = f.seed_r ? default_seed(id, sig, *f.seed_r) : default_seed(id, sig);
  return make_example(id, sig, seed);
}

int cmd_verify(const std::string& target, const Flags& f, std::ostream& out) {
  const RunConfig cfg = merged_config(f);
  const std::string format = cfg.format.empty() ? "json" : cfg.format;
  if (format != "json" && format != "text") throw UsageError("verify writes json or text");
  std::vector<int> ids;
  if (target == "all") {
    if (!f.signature.empty()) throw UsageError("--signature needs a single example id");
    ids = cfg.examples;
  } else {
    ids.push_back(parse_example_id(target));
  }

  CrossCheckOptions opts;
  opts.grid_s = cfg.grid_s;
  opts.grid_t = cfg.grid_t;
  opts.grid_leaf = cfg.grid_leaf;
  opts.verify_tol = cfg.verify_tol;
  opts.ode_step = cfg.ode_tol;
  opts.frenet.light_tol = cfg.tau_light;

  ojson report;
  report["schema"] = 1;
  report["command"] = "verify";
  report["target"] = target;
  ojson examples = ojson::array();
  std::size_t count = 0;
  bool pass = true;
  std::ostringstream text;
  for (int id : ids) {
    const bool custom = target != "all" || (id == 1 && f.seed_r);
    const ExampleSpec spec = custom ? build_spec(id, f) : default_example(id);
    const CrossCheckReport rep = example_cross_check(spec, opts);
    ojson ex;
    ex["id"] = id;
    ex["signature"] = {{"n", spec.sig.n()}, {"p", spec.sig.p()}};
    ex["seed"] = complex_json(spec.seed_z);
    ex["t0"] = spec.t0;
    ex["classification"] = rep.classification;
    ex["kappa1"] = rep.kappa1 ? ojson(*rep.kappa1) : ojson(nullptr);
    ex["pass"] = rep.pass();
    ojson arr = ojson::array();
    for (const auto& i : rep.identities) {
      arr.push_back(identity_json(i));
      text << (i.pass ? "PASS " : "FAIL ") << i.name << ' ' << fmt(i.residual, "%.3e") << ' ' << fmt(i.tol, "%g")
           << '\n';
    }
    text << "classification ex" << id << ' ' << rep.classification << '\n';
    ex["identities"] = std::move(arr);
    count += rep.identities.size();
    pass = pass && rep.pass();
    examples.push_back(std::move(ex));
  }
  ojson inv = ojson::array();
  for (const auto& i : invariant_suite()) {
    inv.push_back(identity_json(i));
    text << (i.pass ? "PASS " : "FAIL ") << i.name << ' ' << fmt(i.residual, "%.3e") << ' ' << fmt(i.tol, "%g")
         << '\n';
    pass = pass && i.pass;
    ++count;
  }
  report["pass"] = pass;
  report["identity_count"] = count;
  report["examples"] = std::move(examples);
  report["invariants"] = std::move(inv);
  text << (pass ? "PASS" : "FAIL") << " verify " << target << ' ' << count << " identities\n";
  emit(format == "json" ? report.dump(2) + "\n" : text.str(), cfg, out);
  return pass ? kPass : kVerifyFailed;
}

int cmd_classify(const std::string& path, const Flags& f, std::ostream& out) {
  const RunConfig cfg = merged_config(f);
  if (!cfg.format.empty() && cfg.format != "json") throw UsageError("classify writes json");
  const nlohmann::json doc = parse_json(read_file(path), path);
  const SampledCurve c = parse_curve(doc, cfg);

  const VectorField e1 = velocity(c);
  const auto mid = e1[e1.size() / 2];
  const double g = real_metric(c.signature(), mid, mid);
  if (std::abs(g) <= cfg.tau_light * mid.squaredNorm()) {
    throw CausalCharacterError("curve velocity is lightlike");
  }

  FrenetOptions opts;
  opts.light_tol = cfg.tau_light;
  ojson res;
  res["schema"] = 1;
  res["command"] = "classify";
  int code = kPass;
  try {
    const Classification cls = classify_base_curve(c, opts);
    const char* name = cls.which == RuledCase::CaseA_Geodesic            ? "a"
                       : cls.which == RuledCase::CaseB_TotallyRealCircle ? "b"
                                                                          : "c";
    res["case"] = name;
    res["kappa1"] = cls.kappa1;
    res["signs"] = cls.frenet.signs;
    res["kind"] = cls.kind ? ojson(leaf_kind_name(*cls.kind)) : ojson(nullptr);
    ojson diag;
    diag["frenet_order"] = cls.frenet.order;
    diag["system_residual"] = cls.frenet.system_residual;
    if (cls.circle) {
      diag["kappa_rel_stdev"] = cls.circle->kappa_rel_stdev;
      diag["torsion"] = cls.circle->torsion;
    }
    if (cls.case_c) {
      diag["f2_causal"] = cls.case_c->f2_causal;
      diag["f2_parallel"] = cls.case_c->f2_parallel;
      diag["f2_norm_min"] = cls.case_c->f2_norm_min;
    }
    res["diagnostics"] = std::move(diag);
  } catch (const ClassificationError& e) {
    res["case"] = "none";
    res["error"] = e.what();
    code = kVerifyFailed;
  }
  emit(res.dump(2) + "\n", cfg, out);
  return code;
}

int cmd_sample(const std::string& target, const Flags& f, std::ostream& out) {
  const RunConfig cfg = merged_config(f);
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  if (format != "csv" && format != "json") throw UsageError("sample writes csv or json");
  const ExampleSpec spec = build_spec(parse_example_id(target), f);
  const Signature& sig = spec.sig;
  const int n = sig.n();
  const RHSParametrization p = example_parametrization(spec, 0.2, cfg.ode_tol);
  const auto grid = example_grid(spec, cfg.grid_s, cfg.grid_t, cfg.grid_leaf);
  const VectorField pts = evaluate_points_parallel(p, grid);
  const double key = std::abs(spec.seed_z[key_index(spec.id, sig)]);

  std::vector<std::string> columns{"s", "t"};
  for (int k = 1; k <= 2 * n - 2; ++k) columns.push_back("c" + std::to_string(k));
  for (int j = 1; j <= n + 1; ++j) {
    columns.push_back("re_z" + std::to_string(j));
    columns.push_back("im_z" + std::to_string(j));
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row{grid[i][0], spec.t0 + grid[i][0] / key};
    row.insert(row.end(), grid[i].begin() + 1, grid[i].end());
    const AmbientVector z = canonicalize(sig, pts[i]).rep();
    for (int j = 0; j <= n; ++j) {
      row.push_back(z[j].real());
      row.push_back(z[j].imag());
    }
    rows.push_back(std::move(row));
  }

  std::string content;
  if (format == "csv") {
    std::ostringstream ss;
    for (std::size_t k = 0; k < columns.size(); ++k) ss << (k ? "," : "") << columns[k];
    ss << '\n';
    for (const auto& row : rows) {
      for (std::size_t k = 0; k < row.size(); ++k) ss << (k ? "," : "") << fmt(row[k]);
      ss << '\n';
    }
    content = ss.str();
  } else {
    ojson doc;
    doc["schema"] = 1;
    doc["command"] = "sample";
    doc["example"] = spec.id;
    doc["signature"] = {{"n", n}, {"p", sig.p()}};
    doc["columns"] = columns;
    doc["rows"] = rows;
    content = doc.dump(1) + "\n";
  }
  emit(content, cfg, out);

  // Re-read what was written and check every row against the sphere.
  std::vector<std::vector<double>> back;
  const std::string written = cfg.out.empty() ? content : read_file(cfg.out);
  if (format == "csv") {
    std::istringstream ss(written);
    std::string line;
    std::getline(ss, line);
    while (std::getline(ss, line)) {
      std::vector<double> row;
      std::istringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
      back.push_back(std::move(row));
    }
  } else {
    back = parse_json(written, cfg.out).at("rows").get<std::vector<std::vector<double>>>();
  }
  if (back.size() != rows.size()) throw IoError("re-read row count mismatch");
  double worst = 0.0;
  const std::size_t off = 2 + static_cast<std::size_t>(2 * n - 2);
  for (const auto& row : back) {
    AmbientVector z(n + 1);
    for (int j = 0; j <= n; ++j) z[j] = Complex(row[off + 2 * j], row[off + 2 * j + 1]);
    worst = std::max(worst, std::abs(real_metric(sig, z, z) - 1.0));
  }
  return worst <= 1e-9 ? kPass : kVerifyFailed;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  const nlohmann::json doc = parse_json(read_file(path), path);
  RunConfig cfg;
  if (!doc.is_object()) throw UsageError("config must be a JSON object");
  try {
    if (doc.contains("tolerances")) {
      const auto& t = doc.at("tolerances");
      cfg.tau_light = t.value("tau_light", cfg.tau_light);
      cfg.sphere_tol = t.value("sphere_tol", cfg.sphere_tol);
      cfg.ode_tol = t.value("ode_tol", cfg.ode_tol);
      cfg.verify_tol = t.value("verify_tol", cfg.verify_tol);
    }
    if (doc.contains("grid")) {
      const auto& g = doc.at("grid");
      cfg.grid_s = g.value("s", cfg.grid_s);
      cfg.grid_t = g.value("t", cfg.grid_t);
      cfg.grid_leaf = g.value("leaf", cfg.grid_leaf);
    }
    if (doc.contains("output")) {
      const auto& o = doc.at("output");
      cfg.out = o.value("path", cfg.out);
      cfg.format = o.value("format", cfg.format);
    }
    if (doc.contains("examples")) cfg.examples = doc.at("examples").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  for (double t : {cfg.tau_light, cfg.sphere_tol, cfg.ode_tol, cfg.verify_tol}) {
    if (!(t > 0.0)) throw UsageError("tolerances must be positive");
  }
  if (cfg.grid_s < 2 || cfg.grid_t < 2 || cfg.grid_leaf < 2) {
    throw UsageError("grid densities must be at least 2");
  }
  for (int id : cfg.examples) {
    if (id < 1 || id > 4) throw UsageError("example ids are 1-4");
  }
}

Signature parse_signature(const std::string& text) {
  int n = 0, p = 0;
  char comma = 0;
  std::istringstream ss(text);
  if (!(ss >> n >> comma >> p) || comma != ',' || !ss.eof()) {
    throw UsageError("signature must look like n,p");
  }
  try {
    return Signature(n, p);
  } catch (const GeometryError& e) {
    throw UsageError(e.what());
  }
}

std::array<int, 3> parse_grid(const std::string& text) {
  std::string s = text;
  for (const std::string times : {"×", "X"}) {
    for (auto pos = s.find(times); pos != std::string::npos; pos = s.find(times)) {
      s.replace(pos, times.size(), "x");
    }
  }
  std::array<int, 3> g{};
  char x1 = 0, x2 = 0;
  std::istringstream ss(s);
  if (!(ss >> g[0] >> x1 >> g[1] >> x2 >> g[2]) || x1 != 'x' || x2 != 'x' || !ss.eof()) {
    throw UsageError("grid must look like SxTxL");
  }
  return g;
}

SampledCurve parse_curve(const nlohmann::json& doc, const RunConfig& cfg) {
  const auto sj = get_field<nlohmann::json>(doc, "signature");
  const Signature sig = [&] {
    try {
      return Signature(get_field<int>(sj, "n"), get_field<int>(sj, "p"));
    } catch (const GeometryError& e) {
      throw UsageError(e.what());
    }
  }();
  const int dim = sig.dim();
  const auto kind = get_field<std::string>(doc, "kind");
  const auto data = get_field<nlohmann::json>(doc, "data");

  if (kind == "samples") {
    const auto s = get_field<std::vector<double>>(data, "s");
    const auto zs = get_field<nlohmann::json>(data, "z");
    if (!zs.is_array() || zs.size() != s.size()) throw UsageError("\"z\" must match \"s\"");
    VectorField reps;
    for (const auto& z : zs) {
      AmbientVector v = parse_complex_vector(z, dim, "z");
      require_sphere_point(sig, v, cfg.sphere_tol);
      reps.push_back(std::move(v));
    }
    return horizontal_lift(sig, s, reps, reps.front());
  }
  if (kind != "closed_form") throw UsageError("kind must be closed_form or samples");

  const auto family = get_field<std::string>(data, "family");
  const auto range = data.value("range", std::vector<double>{-1.0, 1.0});
  const auto count = data.value("samples", std::size_t{2001});
  if (range.size() != 2 || !(range[0] < range[1])) throw UsageError("range must be [a, b], a < b");

  if (family == "geodesic") {
    const AmbientVector q = parse_complex_vector(get_field<nlohmann::json>(data, "q"), dim, "q");
    require_sphere_point(sig, q, cfg.sphere_tol);
    AmbientVector v =
        horizontal_project(sig, q, parse_complex_vector(get_field<nlohmann::json>(data, "v"), dim, "v"));
    const double g = real_metric(sig, v, v);
    if (std::abs(g) <= cfg.tau_light * v.squaredNorm()) {
      throw CausalCharacterError("geodesic velocity is lightlike");
    }
    v /= std::sqrt(std::abs(g));
    const LiftedCurve c(sig, [=](double s) { return sphere_geodesic(sig, q, v, s); });
    return sample_curve(c, range[0], range[1], count);
  }
  if (family == "case_c1" || family == "case_c2") {
    const AmbientVector p0 = parse_complex_vector(get_field<nlohmann::json>(data, "p0"), dim, "p0");
    const AmbientVector v0 = parse_complex_vector(get_field<nlohmann::json>(data, "v0"), dim, "v0");
    const AmbientVector f2 = parse_complex_vector(get_field<nlohmann::json>(data, "F2"), dim, "F2");
    const LiftedCurve c = family == "case_c1" ? case_c1_curve(sig, p0, v0, f2)
                                              : case_c2_curve(sig, p0, v0, f2);
    return sample_curve(c, range[0], range[1], count);
  }
  if (family == "example") {
    const int id = get_field<int>(data, "id");
    if (id < 1 || id > 4) throw UsageError("example id must be 1-4");
    AmbientVector z = data.contains("z")
                          ? parse_complex_vector(data.at("z"), sig.n(), "z")
                          : default_seed(id, sig, data.value("seed_r", M_PI / 8));
    const ExampleSpec spec = make_example(id, sig, z, data.value("t0", 0.0));
    return sample_curve(example_integral_curve(spec).alpha, range[0], range[1], count);
  }
  if (family == "rp2_circle") {
    // Circle of geodesic radius rho in the totally real plane spanned by
    // e_{n-2}, e_{n-1}, e_n.
    const double rho = get_field<double>(data, "radius");
    if (!(rho > 0.0 && rho < M_PI / 2)) throw UsageError("radius must lie in (0, pi/2)");
    const int n = sig.n();
    if (n < 2 || sig.sign(n - 2) < 0) {
      throw CausalCharacterError("rp2_circle needs spacelike slots n-2, n-1, n");
    }
    const double w = 1.0 / std::sin(rho);
    auto deriv = [=](int k) {
      return [=](double s) -> AmbientVector {
        AmbientVector y = AmbientVector::Zero(n + 1);
        const double a = w * s;
        const double scale = std::sin(rho) * std::pow(w, k);
        // k-th derivative of (cos a, sin a).
        const double c = std::cos(a + k * M_PI / 2), sn = std::sin(a + k * M_PI / 2);
        y[n - 2] = scale * c;
        y[n - 1] = scale * sn;
        if (k == 0) y[n] = std::cos(rho);
        return y;
      };
    };
    const LiftedCurve c(sig, deriv(0), deriv(1), deriv(2), deriv(3));
    return sample_curve(c, range[0], range[1], count);
  }
  throw UsageError("unknown closed-form family \"" + family + "\"");
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw IoError("cannot write " + tmp.string());
    o << content;
    o.flush();
    if (!o) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename onto " + path);
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ruled real hypersurfaces in indefinite complex projective space"};
  app.name("pseudocp");
  app.require_subcommand(1);
  Flags f;
  std::string target;

  auto* verify = app.add_subcommand("verify", "run the identity suite for an example or all");
  verify->add_option("target", target, "1-4 or all")->required();
  add_flags(verify, f);
  auto* classify = app.add_subcommand("classify", "classify a curve file (case a, b or c)");
  classify->add_option("curve", target, "curve JSON file")->required();
  add_flags(classify, f);
  auto* sample = app.add_subcommand("sample", "sample an example hypersurface");
  sample->add_option("target", target, "example id 1-4")->required();
  add_flags(sample, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(target, f, out);
    if (classify->parsed()) return cmd_classify(target, f, out);
    return cmd_sample(target, f, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const CrossCheckError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const GeometryError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kPrecondition;
  }
}

}  // namespace pseudocp::cli
