#include "ymh/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "ymh/painleve.hpp"
#include "ymh/polynomial.hpp"
#include "ymh/report.hpp"
#include "ymh/verifier.hpp"

namespace ymh::cli {

namespace {

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string num(cplx z) {
  if (z.imag() == 0.0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? "" : "+") + num(z.imag()) + "i";
}

// Raised for input problems; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised for table invariant violations; maps to exit code 1.
struct TableInvalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Polynomial parse_expr(const std::string& expr) {
  try {
    return parse(expr);
  } catch (const ParseError& e) {
    throw UsageError("cannot parse '" + expr + "': " + e.what());
  }
}

std::shared_ptr<const TranscendentTable> load_table(const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << "# table: solved in-process (r_max=8, tol=1e-8)\n";
    return std::make_shared<const TranscendentTable>(solve_radial(8.0, 1e-8));
  }
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open table file '" + path + "'");
  std::shared_ptr<const TranscendentTable> t;
  try {
    t = std::make_shared<const TranscendentTable>(read_table(is));
  } catch (const TableError& e) {
    throw TableInvalid(std::string("invalid table '") + path + "': " + e.what());
  }
  const TableValidation v = validate_table(*t);
  if (!v.ok) throw TableInvalid("table '" + path + "' fails validation: " + v.message);
  return t;
}

// Options shared by the verification commands.
struct ConfigOptions {
  std::string poly;
  std::string abelian;
  std::string table;
  bool analytic = false;
  double fd = 1e-3;
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  double imag_extent = 0.5;
  std::optional<double> threshold;
  std::string report_out;

  void attach(CLI::App* app) {
    app->add_option("--poly", poly, "polynomial P(z1, z2) for the non-abelian ansatz");
    app->add_option("--abelian", abelian, "polynomial theta(z1, z2) for an abelian solution");
    app->add_option("--table", table, "transcendent table file (solved in-process if omitted)");
    app->add_flag("--analytic", analytic, "exact derivatives (abelian only)");
    app->add_option("--fd", fd, "finite-difference step")->check(CLI::PositiveNumber);
    app->add_option("--samples", samples, "number of sample points")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "sampling seed");
    app->add_option("--imag-extent", imag_extent, "imaginary extent of complex samples")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--threshold", threshold, "pass threshold (default 1e-12 analytic, 1e-3 FD)");
    app->add_option("--report-out", report_out, "also write the residual report to this file");
  }

  FieldConfig build(std::ostream& out) const {
    if (poly.empty() == abelian.empty()) throw UsageError("give exactly one of --poly or --abelian");
    if (!abelian.empty()) {
      out << "# config: abelian theta=" << abelian << "\n";
      return build_abelian(parse_expr(abelian));
    }
    if (analytic) throw UsageError("--analytic applies to --abelian configurations only");
    const Polynomial p = parse_expr(poly);
    if (p.degree() < 1) throw UsageError("--poly needs a polynomial of degree >= 1");
    auto t = load_table(table, out);
    out << "# config: poly P=" << poly << " psi0=" << num(t->psi0()) << "\n";
    return build_poly_ansatz(p, std::move(t));
  }

  StencilSpec stencil() const {
    return analytic ? StencilSpec{fd, DiffScheme::Analytic} : StencilSpec{fd, DiffScheme::Central2};
  }
  double pass_threshold() const {
    if (threshold) return *threshold;
    return analytic ? Thresholds{}.analytic : Thresholds{}.finite_difference;
  }
  SampleBox box() const {
    SampleBox b;
    b.imag_extent = imag_extent;
    return b;
  }
  std::vector<CPoint> points() const { return sample_points(box(), samples, seed); }
};

int finish(const ResidualReport& r, const ConfigOptions& o, std::ostream& out) {
  const std::string text = format_report(r);
  out << text;
  if (!o.report_out.empty()) {
    std::ofstream f(o.report_out);
    if (!f) throw UsageError("cannot write '" + o.report_out + "'");
    f << text;
  }
  const double thr = o.pass_threshold();
  const bool pass = r.max_abs() < thr;
  out << "threshold=" << num(thr) << " status=" << (pass ? "pass" : "fail") << "\n";
  return pass ? kPass : kNumericFailure;
}

int cmd_solve(double r_max, double tol, const std::string& integrator, const std::string& path,
              std::ostream& out) {
  RadialSolveOptions opts;
  try {
    opts.integrator = integrator_from_string(integrator);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::optional<TranscendentTable> t;
  try {
    t.emplace(solve_radial(r_max, tol, opts));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  write_table(f, *t);
  f.close();
  const TableValidation v = validate_table(*t);
  out << "psi0=" << num(t->psi0()) << "\n"
      << "boundary_defect=" << num(t->data().boundary_defect) << "\n"
      << "splice_radius=" << num(t->data().splice_radius) << "\n"
      << "iterations=" << t->shooting_history().size() << "\n"
      << "nodes=" << t->r_nodes().size() << "\n"
      << "validation=" << (v.ok ? "ok" : "failed: " + v.message) << "\n";
  return v.ok ? kPass : kNumericFailure;
}

int cmd_field(const std::string& expr, const std::string& table, const GridSpec& g,
              const std::string& format, const std::string& path, std::ostream& out) {
  try {
    validate(g);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Polynomial p = parse_expr(expr);
  if (p.degree() < 1) throw UsageError("field needs a polynomial of degree >= 1");
  std::ostringstream log;
  auto t = load_table(table, log);
  const Grid grid = field_grid(build_poly_ansatz(p, t), g);

  std::ofstream file;
  if (!path.empty()) {
    file.open(path, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + path + "'");
  }
  std::ostream& os = path.empty() ? out : file;
  if (format == "pgm") {
    write_pgm(os, grid);
  } else {
    write_csv(os, grid,
              {"expr=" + expr,
               "xmin=" + num(g.xmin) + " xmax=" + num(g.xmax) + " ymin=" + num(g.ymin) +
                   " ymax=" + num(g.ymax) + " nx=" + std::to_string(g.nx) + " ny=" + std::to_string(g.ny),
               "psi0=" + num(t->psi0())});
  }
  if (!path.empty()) {
    const auto top = std::max_element(grid.values.begin(), grid.values.end());
    const auto k = static_cast<int>(top - grid.values.begin());
    out << "wrote " << path << " max_F=" << num(*top) << " at x=" << num(grid.x(k % g.nx))
        << " y=" << num(grid.y(k / g.nx)) << "\n";
  }
  return kPass;
}

int cmd_verify(const ConfigOptions& o, std::ostream& out) {
  const FieldConfig c = o.build(out);
  const StencilSpec s = o.stencil();
  const auto pts = o.points();
  ResidualReport r;
  for (const CPoint& z : pts) r.merge(residuals_at(c, z, s));
  r.merge(implied_systems_check(c, pts, s).report);
  const StencilSpec gs = o.analytic ? s : StencilSpec{o.fd, DiffScheme::Central4};
  r.merge(g_holomorphy_check(c, pts, gs).report);
  return finish(r, o, out);
}

std::vector<cplx> parse_zetas(const std::string& list) {
  std::vector<cplx> zs;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    cplx z;
    try {
      z = parse_constant(item);
    } catch (const ParseError& e) {
      throw UsageError("bad zeta '" + item + "': " + e.what());
    }
    if (z == cplx{}) throw UsageError("zeta must be nonzero");
    zs.push_back(z);
  }
  if (zs.empty()) throw UsageError("--zetas needs at least one value");
  return zs;
}

int cmd_lax(const ConfigOptions& o, const std::string& zetas, std::ostream& out) {
  const auto zs = parse_zetas(zetas);
  const FieldConfig c = o.build(out);
  const LaxReport lr = lax_check_sampled(c, o.points(), zs, o.stencil());
  for (const auto& p : lr.per_zeta)
    out << "zeta=" << num(p.zeta) << " direct=" << num(p.direct) << " assembled=" << num(p.assembled)
        << "\n";
  return finish(lr.report, o, out);
}

std::vector<Point8> lift_points(const ConfigOptions& o) {
  std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Point8> pts;
  for (const CPoint& z : o.points()) {
    auto spectator = [&] { return 2.0 * unit_uniform(rng()) - 1.0; };
    const double x3 = spectator(), x4 = spectator(), x7 = spectator(), x8 = spectator();
    pts.push_back({z[0].real(), z[0].imag(), x3, x4, z[1].real(), z[1].imag(), x7, x8});
  }
  return pts;
}

int cmd_lift(const ConfigOptions& o, std::ostream& out) {
  const FieldConfig c = o.build(out);
  const LiftResult lr = lift_to_8d_check(c, lift_points(o), o.stencil());
  for (std::size_t i = 0; i < lr.octonion_max.size(); ++i)
    out << "octonion[" << i + 1 << "]=" << num(lr.octonion_max[i]) << "\n";
  for (std::size_t i = 0; i < lr.a4_max.size(); ++i)
    out << "a4_strong[" << i + 1 << "]=" << num(lr.a4_max[i]) << "\n";
  return finish(lr.report, o, out);
}

int cmd_report(const std::string& path, double threshold, std::ostream& out) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open report '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  ResidualReport r;
  try {
    r = parse_report(ss.str());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool pass = true;
  for (const auto& e : r.entries()) {
    const bool ok = e.max_abs < threshold;
    pass = pass && ok;
    out << to_string(e.id) << ": max_abs=" << num(e.max_abs) << " rms=" << num(e.rms)
        << " n_samples=" << e.n_samples << " fd_step=" << num(e.fd_step) << (ok ? " ok" : " FAIL") << "\n";
  }
  out << "threshold=" << num(threshold) << " status=" << (pass ? "pass" : "fail") << "\n";
  return pass ? kPass : kNumericFailure;
}

}  // namespace

double Grid::x(int i) const {
  if (i == spec.nx - 1) return spec.xmax;
  return spec.xmin + (spec.xmax - spec.xmin) * i / (spec.nx - 1);
}

double Grid::y(int j) const {
  if (j == spec.ny - 1) return spec.ymax;
  return spec.ymin + (spec.ymax - spec.ymin) * j / (spec.ny - 1);
}

void validate(const GridSpec& g) {
  if (g.nx < 2 || g.ny < 2) throw std::invalid_argument("grid needs nx, ny >= 2");
  if (!(g.xmin < g.xmax) || !(g.ymin < g.ymax)) throw std::invalid_argument("grid needs xmin < xmax and ymin < ymax");
}

Grid field_grid(const FieldConfig& c, const GridSpec& g) {
  validate(g);
  Grid out{g, std::vector<double>(static_cast<std::size_t>(g.nx) * g.ny)};
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      out.values[static_cast<std::size_t>(j) * g.nx + i] = gauge_field_norm(c, {cplx{out.x(i)}, cplx{out.y(j)}});
  return out;
}

void write_csv(std::ostream& os, const Grid& g, const std::vector<std::string>& metadata) {
  for (const auto& m : metadata) os << "# " << m << "\n";
  os << "x,y,F\n";
  for (int j = 0; j < g.spec.ny; ++j)
    for (int i = 0; i < g.spec.nx; ++i) os << num(g.x(i)) << ',' << num(g.y(j)) << ',' << num(g.at(i, j)) << '\n';
}

void write_pgm(std::ostream& os, const Grid& g) {
  const auto [lo, hi] = std::minmax_element(g.values.begin(), g.values.end());
  const double span = *hi - *lo;
  os << "P2\n" << g.spec.nx << ' ' << g.spec.ny << "\n255\n";
  for (int j = g.spec.ny - 1; j >= 0; --j) {
    for (int i = 0; i < g.spec.nx; ++i) {
      const int v = span > 0 ? static_cast<int>(std::lround(255.0 * (g.at(i, j) - *lo) / span)) : 0;
      os << v << (i + 1 < g.spec.nx ? ' ' : '\n');
    }
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integrable Yang-Mills-Higgs solutions: transcendent solver, field grids and residual checks",
               "ymh"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  double r_max = 8.0, tol = 1e-8;
  std::string out_path, integrator = "dopri45";
  auto* solve = app.add_subcommand("solve", "solve the radial transcendent and write a table");
  solve->add_option("--rmax", r_max, "outer radius (>= 5)");
  solve->add_option("--tol", tol, "integrator tolerance (<= 1e-6)");
  solve->add_option("--integrator", integrator, "dopri45 or rk4");
  solve->add_option("--out", out_path, "output table file")->required();

  std::string expr, table, format = "csv";
  GridSpec grid;
  auto* field = app.add_subcommand("field", "evaluate |F| on a real-slice grid");
  field->add_option("--poly,--expr", expr, "polynomial P(z1, z2)")->required();
  field->add_option("--table", table, "transcendent table file (solved in-process if omitted)");
  field->add_option("--xmin", grid.xmin);
  field->add_option("--xmax", grid.xmax);
  field->add_option("--ymin", grid.ymin);
  field->add_option("--ymax", grid.ymax);
  field->add_option("--nx", grid.nx);
  field->add_option("--ny", grid.ny);
  field->add_option("--format", format, "csv or pgm")->check(CLI::IsMember({"csv", "pgm"}));
  field->add_option("--out", out_path, "output file (stdout if omitted)");

  ConfigOptions vopt, lopt, fopt;
  auto* verify = app.add_subcommand("verify", "residuals of the field equations and implied systems");
  vopt.attach(verify);

  std::string zetas = "1,i,2";
  auto* lax = app.add_subcommand("lax", "zero-curvature check of the Lax connection");
  lopt.attach(lax);
  lax->add_option("--zetas", zetas, "comma-separated nonzero spectral parameters");

  auto* lift = app.add_subcommand("lift", "8-dimensional relations of the lifted configuration");
  fopt.attach(lift);

  std::string report_in;
  double report_threshold = Thresholds{}.finite_difference;
  auto* report = app.add_subcommand("report", "summarise a saved residual report");
  report->add_option("--in", report_in, "report file written with --report-out")->required();
  report->add_option("--threshold", report_threshold, "pass threshold");

  std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsageError;
  }

  try {
    if (*solve) return cmd_solve(r_max, tol, integrator, out_path, out);
    if (*field) return cmd_field(expr, table, grid, format, out_path, out);
    if (*verify) return cmd_verify(vopt, out);
    if (*lax) return cmd_lax(lopt, zetas, out);
    if (*lift) return cmd_lift(fopt, out);
    if (*report) return cmd_report(report_in, report_threshold, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const TableInvalid& e) {
    err << "error: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const BracketNotFound& e) {
    err << "error: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericFailure;
  }
  return kUsageError;
}

}  // namespace ymh::cli
