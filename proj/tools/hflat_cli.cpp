// hflat command-line front end. Exit codes: 0 pass, 1 verification failure, 2 usage or invalid input.
#include "hflat/curvature.hpp"
#include "hflat/flow.hpp"
#include "hflat/g2.hpp"
#include "hflat/serialize.hpp"
#include "hflat/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace hflat;

namespace {

struct Globals {
  std::string output;
  std::string format = "json";
  double tol = 1e-10;
  std::uint64_t seed = 20240917;
  int jobs = 1;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<Rational> parse_list(const std::string& text, std::size_t count, const char* what) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": cannot parse '" + item + "'");
    }
  }
  if (out.size() != count)
    throw UsageError(std::string(what) + ": expected " + std::to_string(count) + " comma-separated coefficients");
  return out;
}

BForm parse_form(const std::string& text, int degree, const char* what) {
  const auto c = parse_list(text, degree + 1, what);
  BForm f(degree);
  for (int i = 0; i <= degree; ++i) f[i] = c[i];
  return f;
}

std::vector<double> parse_doubles(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& r : parse_list(text, std::count(text.begin(), text.end(), ',') + 1, what)) out.push_back(r.get_d());
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Flat key/value CSV for single-record reports.
void emit(const Globals& g, const Json& j) {
  Output out(g.output);
  if (g.format == "json") {
    out.os() << j.dump(2) << "\n";
    return;
  }
  out.os() << "key,value\n";
  for (const auto& [k, v] : j.items()) out.os() << k << "," << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

Model read_model(const std::string& x, const std::string& y) {
  Model m{parse_form(x, 1, "--x"), parse_form(y, 2, "--y")};
  if (m.is_zero()) throw UsageError("x and y must both be nonzero");
  return m;
}

int cmd_classify(const Globals& g, const std::string& xs, const std::string& ys) {
  const Model m = read_model(xs, ys);
  const CEOp d = structure_constants(m);
  const LieAlgebraClass cls = classify(m);
  const BForm p = torsion_of(m);
  const Rational base = 4 * discriminant(m.y) * resultant(m.x, m.y) * resultant(m.x, m.y);
  Json j;
  j["model"] = model_to_json(m);
  j["class"] = to_string(cls);
  j["algebra"] = algebra_name(cls);
  j["delta"] = to_string(discriminant(m.y));
  j["resultant"] = to_string(resultant(m.x, m.y));
  j["detKilling"] = to_string(Rational(base * base * base));
  j["torsion"] = bform_to_json(p);
  j["half_flat"] = sgn(halfflat_condition(p, GL2::identity())) == 0;
  j["hermitian"] = sgn(hermitian_condition(p, GL2::identity())) == 0;
  if (g.format == "json") j["structure"] = ce_to_json(d);
  emit(g, j);
  return 0;
}

int cmd_curvature(const Globals& g, const std::string& xs, const std::string& ys) {
  const Model m = read_model(xs, ys);
  const auto rep = levi_civita_oracle(structure_constants(m), 0.0);
  Json j = curvature_to_json(rep);
  j["scalar_normalized"] = rep.scalar / kScalarNormalization;
  j["einstein"] = einstein_locus_check(m);
  j["conformally_flat"] = conformally_flat_check(m);
  if (g.format == "csv") j.erase("ricci");
  emit(g, j);
  return 0;
}

int cmd_einstein(const Globals& g, int grid) {
  const auto scan = einstein_scan({grid, g.tol, g.jobs});
  Output out(g.output);
  if (g.format == "csv") {
    out.os() << "x1,x2,y1,y2,y3,p1,p2,p3,p4,scalar_normalized,ricci_residual\n";
    for (const auto& o : scan.orbits) {
      out.os() << o.point.x[0] << "," << o.point.x[1] << "," << o.point.y[0] << "," << o.point.y[1] << ","
               << o.point.y[2];
      for (int i = 0; i < 4; ++i) out.os() << "," << o.torsion[i];
      out.os() << "," << o.scalar_normalized << "," << o.ricci_residual << "\n";
    }
    return 0;
  }
  Json orbits = Json::array();
  for (const auto& o : scan.orbits)
    orbits.push_back({{"x", o.point.x.coeffs()},
                      {"y", o.point.y.coeffs()},
                      {"torsion", o.torsion.coeffs()},
                      {"scalar_normalized", o.scalar_normalized},
                      {"ricci_residual", o.ricci_residual}});
  out.os() << Json{{"grid_points", scan.grid_points}, {"converged_seeds", scan.converged_seeds}, {"orbits", orbits}}
                  .dump(2)
           << "\n";
  return 0;
}

Json boundary_json(const BoundaryReport& b) {
  Json j{{"finite", b.finite}};
  if (!b.finite) {
    j["t_finite"] = false;
    return j;
  }
  j["s"] = b.s;
  j["t"] = b.t;
  j["t_finite"] = b.t_finite;
  j["g_extends"] = b.g_extends;
  if (b.endpoint) {
    j["endpoint"] = to_string(b.endpoint->kind);
    if (b.endpoint->root) j["root"] = b.endpoint->root->coeffs();
    j["lambda"] = b.endpoint->lambda_coefficient;
  } else {
    j["rejection"] = b.rejection;
  }
  return j;
}

int cmd_flow(const Globals& g, const std::string& ps, const std::string& qs, double ds, double s_max,
             const std::string& g2_dump) {
  const BFormD p = parse_form(ps, 3, "--p").cast<double>(), q0 = parse_form(qs, 3, "--q0").cast<double>();
  Trajectory tr;
  try {
    tr = integrate_line(p, q0, ds, s_max);
  } catch (const std::exception& e) {
    throw UsageError(std::string("invalid initial data: ") + e.what());
  }
  const Json report{{"static", tr.static_solution},
                    {"lower", boundary_json(tr.lower)},
                    {"upper", boundary_json(tr.upper)}};
  Output out(g.output);
  if (g.format == "csv") {
    out.os() << "s,t,q1,q2,q3,q4,detg,delta\n";
    out.os().precision(12);
    for (const auto& st : tr.samples)
      out.os() << st.s << "," << st.t << "," << st.q[0] << "," << st.q[1] << "," << st.q[2] << "," << st.q[3] << ","
               << st.detg << "," << discriminant(st.q) << "\n";
    out.os() << "# " << report.dump() << "\n";
  } else {
    Json samples = Json::array();
    for (const auto& st : tr.samples)
      samples.push_back({{"s", st.s}, {"t", st.t}, {"q", st.q.coeffs()}, {"detg", st.detg}, {"delta", discriminant(st.q)}});
    Json j = report;
    j["samples"] = samples;
    out.os() << j.dump(2) << "\n";
  }
  if (!g2_dump.empty() && !tr.static_solution) {
    const auto A = assemble_g2(tr);
    Json arr = Json::array();
    for (const auto& s : A.samples) arr.push_back(g2_sample_to_json(s));
    std::ofstream f(g2_dump);
    if (!f) throw UsageError("cannot open " + g2_dump);
    f << arr.dump(1) << "\n";
  }
  return 0;
}

int cmd_bs_metric(const Globals& g, double lambda, const std::string& zs) {
  if (!(lambda > 0)) throw UsageError("--lambda must be positive");
  Output out(g.output);
  const auto z = parse_doubles(zs, "--z");
  if (g.format == "csv") {
    out.os() << "z,base,fibre\n";
    out.os().precision(15);
    for (double v : z) {
      const auto c = bs_coefficients(lambda, v);
      out.os() << v << "," << c.base << "," << c.fibre << "\n";
    }
    return 0;
  }
  Json arr = Json::array();
  for (double v : z) {
    const auto c = bs_coefficients(lambda, v);
    arr.push_back({{"z", v}, {"base", c.base}, {"fibre", c.fibre}});
  }
  out.os() << arr.dump(2) << "\n";
  return 0;
}

int cmd_endpoints(const Globals& g, const std::string& ps, const std::string& qs) {
  const BForm p = parse_form(ps, 3, "--p"), q = parse_form(qs, 3, "--q");
  Json j{{"p", bform_to_json(p)}, {"q", bform_to_json(q)}};
  int code = 0;
  try {
    const EndpointInfo e = endpoint_classify(p, q);
    j["admissible"] = true;
    j["kind"] = to_string(e.kind);
    if (e.root) j["root"] = e.root->coeffs();
    j["lambda"] = e.lambda_coefficient;
    j["side"] = e.side;
  } catch (const std::domain_error& e) {
    j["admissible"] = false;
    j["reason"] = e.what();
    code = 1;
  }
  emit(g, j);
  return code;
}

int cmd_contract(const Globals& g) {
  const auto scan = contraction_tangency_scan();
  const auto planes = halfflat_contraction_planes();
  const std::vector<BFormD> sample{{1, 0, -1, 0}, {1, 1, 9, 1}, {1, 1, 1, 1}};
  Json jp = Json::array();
  for (std::size_t i = 0; i < planes.size(); ++i)
    jp.push_back({{"generator", planes[i].generator},
                  {"equations", planes[i].equations},
                  {"generators_found", scan.class_counts[i]},
                  {"flow_preserved", flow_preserves_plane(planes[i], sample[i], 0.05)}});
  Json gens = Json::array();
  for (std::size_t i = 0; i < scan.passing_generators.size(); ++i)
    gens.push_back({{"generator", scan.passing_generators[i]}, {"plane", scan.class_of[i]}});
  Output out(g.output);
  if (g.format == "csv") {
    out.os() << "a,b,c,plane\n";
    for (std::size_t i = 0; i < scan.passing_generators.size(); ++i) {
      const auto& v = scan.passing_generators[i];
      out.os() << v[0] << "," << v[1] << "," << v[2] << "," << scan.class_of[i] << "\n";
    }
    return 0;
  }
  out.os() << Json{{"grid_points", scan.grid_points}, {"passing", scan.passing}, {"planes", jp}, {"generators", gens}}
                  .dump(2)
           << "\n";
  return 0;
}

int cmd_verify(const Globals& g, const std::vector<std::string>& suites, int samples, bool perturb, int grid) {
  VerifyOptions opt;
  opt.seed = g.seed;
  opt.samples = samples;
  opt.jobs = g.jobs;
  opt.perturb_jacobi = perturb;
  opt.einstein_grid = grid;
  const auto names = suites.empty() ? suite_names() : suites;
  std::vector<SuiteResult> results;
  for (const auto& n : names) {
    try {
      results.push_back(run_suite(n, opt));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  bool all = true;
  Output out(g.output);
  if (g.format == "csv") out.os() << "id,suite,pass,max_residual,detail\n";
  Json arr = Json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    if (g.format == "csv")
      out.os() << r.id << "," << r.name << "," << (r.pass ? "pass" : "fail") << "," << r.max_residual << ",\""
               << r.detail << "\"\n";
    else
      arr.push_back({{"id", r.id}, {"suite", r.name}, {"pass", r.pass}, {"max_residual", r.max_residual}, {"detail", r.detail}});
  }
  if (g.format == "json") out.os() << Json{{"pass", all}, {"suites", arr}}.dump(2) << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant-torsion SO(3)-structures, half-flat flow and G2 metrics"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--output,-o", g.output, "Write to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", g.tol, "Numerical tolerance");
  app.add_option("--seed", g.seed, "Seed for randomized sweeps");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string x, y, p, q, zs, g2_dump;
  double ds = 0.01, s_max = 5.0, lambda = 1.0;
  int grid = 10000, samples = 1000;
  bool perturb = false;
  std::vector<std::string> suites;

  auto* classify_cmd = app.add_subcommand("classify", "Classify the algebra of a model point (x, y)");
  classify_cmd->add_option("--x", x, "Linear form x1,x2")->required();
  classify_cmd->add_option("--y", y, "Quadratic form y1,y2,y3")->required();

  auto* curv_cmd = app.add_subcommand("curvature", "Levi-Civita curvature of a model point");
  curv_cmd->add_option("--x", x, "Linear form x1,x2")->required();
  curv_cmd->add_option("--y", y, "Quadratic form y1,y2,y3")->required();

  auto* ein_cmd = app.add_subcommand("einstein-scan", "Einstein orbits modulo O(2)");
  ein_cmd->add_option("--grid", grid, "Grid size on the sphere of y")->check(CLI::PositiveNumber);

  auto* flow_cmd = app.add_subcommand("flow", "Half-flat flow along q0 + s p");
  flow_cmd->add_option("--p", p, "Torsion cubic p1,..,p4")->required();
  flow_cmd->add_option("--q0", q, "Initial cubic q1,..,q4")->required();
  flow_cmd->add_option("--ds", ds, "Line parameter step")->check(CLI::PositiveNumber);
  flow_cmd->add_option("--s-max", s_max, "Largest |s| sampled")->check(CLI::PositiveNumber);
  flow_cmd->add_option("--g2", g2_dump, "Write G2 samples (JSON) to this file");

  auto* bs_cmd = app.add_subcommand("bs-metric", "Bryant-Salamon coefficient functions");
  bs_cmd->add_option("--lambda", lambda, "Parameter lambda > 0");
  bs_cmd->add_option("--z", zs, "Comma-separated z values")->required();

  auto* end_cmd = app.add_subcommand("endpoints", "Decide whether q is an admissible endpoint for p");
  end_cmd->add_option("--p", p, "Torsion cubic")->required();
  end_cmd->add_option("--q", q, "Boundary cubic")->required();

  auto* con_cmd = app.add_subcommand("contract", "Contraction tangency scan and invariant planes");

  auto* ver_cmd = app.add_subcommand("verify", "Run verification suites");
  ver_cmd->add_option("--suite", suites, "Suite name (repeatable); default all");
  ver_cmd->add_option("--samples", samples, "Random samples for the exact suites")->check(CLI::PositiveNumber);
  ver_cmd->add_option("--grid", grid, "Einstein scan grid")->check(CLI::PositiveNumber);
  ver_cmd->add_flag("--perturb-jacobi", perturb, "Add a non-Lie term to every sampled d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify_cmd) return cmd_classify(g, x, y);
    if (*curv_cmd) return cmd_curvature(g, x, y);
    if (*ein_cmd) return cmd_einstein(g, grid);
    if (*flow_cmd) return cmd_flow(g, p, q, ds, s_max, g2_dump);
    if (*bs_cmd) return cmd_bs_metric(g, lambda, zs);
    if (*end_cmd) return cmd_endpoints(g, p, q);
    if (*con_cmd) return cmd_contract(g);
    if (*ver_cmd) return cmd_verify(g, suites, samples, perturb, grid);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
