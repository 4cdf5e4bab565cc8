#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "ymh/cli.hpp"

namespace fs = std::filesystem;
using ymh::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result ymh_run(std::vector<std::string> args) {
  args.insert(args.begin(), "ymh");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ymh_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

// One solved table shared by the tests below.
const std::string& table_path() {
  static const std::string path = [] {
    const auto p = scratch("table.csv");
    const Result r = ymh_run({"solve", "--rmax", "8", "--tol", "1e-8", "--out", p.string()});
    REQUIRE(r.code == 0);
    return p.string();
  }();
  return path;
}

}  // namespace

TEST_CASE("solve writes a table and is deterministic") {
  const auto p = table_path();
  const std::string text = slurp(p);
  CHECK(text.find("# psi0=0.170034430741") != std::string::npos);
  const auto q = scratch("table2.csv");
  const Result r = ymh_run({"solve", "--rmax", "8", "--tol", "1e-8", "--out", q.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("boundary_defect=") != std::string::npos);
  CHECK(slurp(q) == text);
}

TEST_CASE("solve argument errors") {
  CHECK(ymh_run({"solve", "--rmax", "2", "--out", scratch("x.csv").string()}).code == 2);
  CHECK(ymh_run({"solve", "--tol", "1e-2", "--out", scratch("x.csv").string()}).code == 2);
  CHECK(ymh_run({"solve", "--integrator", "euler", "--out", scratch("x.csv").string()}).code == 2);
  CHECK(ymh_run({"solve"}).code == 2);
  CHECK(ymh_run({}).code == 2);
  CHECK(ymh_run({"bogus"}).code == 2);
  CHECK(ymh_run({"--help"}).code == 0);
}

TEST_CASE("field CSV puts the maximum on the ellipse") {
  const auto out = scratch("conic.csv");
  const Result r = ymh_run({"field", "--poly", "2*z1^2+z2^2-4", "--table", table_path(), "--out", out.string()});
  REQUIRE(r.code == 0);
  std::ifstream f(out);
  std::string line;
  int comments = 0, rows = 0;
  double best = -1.0, bx = 0.0, by = 0.0, first_x = 0.0, first_y = 0.0, second_x = 0.0;
  bool header = false;
  while (std::getline(f, line)) {
    if (line.rfind("#", 0) == 0) {
      ++comments;
      continue;
    }
    if (!header) {
      CHECK(line == "x,y,F");
      header = true;
      continue;
    }
    double x, y, v;
    char c1, c2;
    std::istringstream(line) >> x >> c1 >> y >> c2 >> v;
    if (rows == 0) first_x = x, first_y = y;
    if (rows == 1) second_x = x;
    if (v > best) best = v, bx = x, by = y;
    ++rows;
  }
  CHECK(comments == 3);
  CHECK(rows == 201 * 201);
  CHECK(first_x == -3.0);
  CHECK(first_y == -3.0);
  CHECK(second_x == doctest::Approx(-2.97));
  CHECK(oracle::ellipse_distance(std::sqrt(2.0), 2.0, bx, by) < 0.1);
}

TEST_CASE("field PGM layout") {
  const auto out = scratch("lines.pgm");
  const Result r = ymh_run({"field", "--poly", "z1*(z1+2*z2)", "--table", table_path(), "--nx", "31", "--ny", "21",
                            "--format", "pgm", "--out", out.string()});
  REQUIRE(r.code == 0);
  std::istringstream s(slurp(out));
  std::string magic;
  int w, h, maxval;
  s >> magic >> w >> h >> maxval;
  CHECK(magic == "P2");
  CHECK(w == 31);
  CHECK(h == 21);
  CHECK(maxval == 255);
  std::vector<int> px(static_cast<std::size_t>(w * h));
  for (auto& v : px) s >> v;
  CHECK(*std::max_element(px.begin(), px.end()) == 255);
  CHECK(*std::min_element(px.begin(), px.end()) == 0);
  // Away from the crossing, each row peaks near x = 0 or x = -2y. Rows run from
  // y = 3 at the top down to y = -3 in steps of 0.3; columns from x = -3 in steps of 0.2.
  for (int row = 0; row < h; ++row) {
    const double y = 3.0 - 0.3 * row;
    if (std::fabs(y) < 1.0) continue;
    const auto first = px.begin() + row * w;
    const double x = -3.0 + 0.2 * static_cast<double>(std::max_element(first, first + w) - first);
    CHECK(std::min(std::fabs(x), std::fabs(x + 2 * y)) < 0.3);
  }
}

TEST_CASE("field errors") {
  CHECK(ymh_run({"field", "--poly", "2z1", "--table", table_path()}).code == 2);
  const Result pe = ymh_run({"field", "--poly", "z1 + * z2", "--table", table_path()});
  CHECK(pe.code == 2);
  CHECK(pe.err.find("position") != std::string::npos);
  CHECK(ymh_run({"field", "--poly", "z1", "--table", "/nonexistent/table.csv"}).code == 2);
  CHECK(ymh_run({"field", "--poly", "z1", "--table", table_path(), "--nx", "1"}).code == 2);
  CHECK(ymh_run({"field", "--poly", "z1", "--table", table_path(), "--format", "png"}).code == 2);

  // A table whose nodes do not satisfy the ODE.
  std::string text = slurp(table_path());
  const auto pos = text.find("\n0.5");
  REQUIRE(pos != std::string::npos);
  const auto comma = text.find(',', pos);
  text.insert(comma + 1, "1");
  const auto bad = scratch("bad_table.csv");
  std::ofstream(bad) << text;
  CHECK(ymh_run({"field", "--poly", "z1", "--table", bad.string()}).code == 1);
}

TEST_CASE("verify") {
  const Result a = ymh_run({"verify", "--abelian", "z1^3+z1*z2", "--analytic"});
  CHECK(a.code == 0);
  CHECK(a.out.find("equation=DbarPhi max_abs=0 ") != std::string::npos);
  CHECK(a.out.find("threshold=1e-12 status=pass") != std::string::npos);

  const auto rep = scratch("verify_report.txt");
  const Result p = ymh_run({"verify", "--poly", "2*z1^2+z2^2-4", "--table", table_path(), "--fd", "1e-3", "--samples",
                            "50", "--seed", "7", "--report-out", rep.string()});
  CHECK(p.code == 0);
  for (const char* id : {"DbarPhi", "FplusComm", "PhiPhiComm", "F20", "DPhiSkew", "Simpson", "KW4", "Gholo"})
    CHECK(p.out.find(std::string("equation=") + id + " ") != std::string::npos);

  const Result again = ymh_run({"verify", "--poly", "2*z1^2+z2^2-4", "--table", table_path(), "--fd", "1e-3",
                                "--samples", "50", "--seed", "7"});
  CHECK(again.out == p.out);

  CHECK(ymh_run({"verify", "--poly", "2*z1^2+z2^2-4", "--table", table_path(), "--fd", "0.5"}).code == 1);
  CHECK(ymh_run({"verify", "--poly", "z1", "--abelian", "z1"}).code == 2);
  CHECK(ymh_run({"verify"}).code == 2);
  CHECK(ymh_run({"verify", "--poly", "z1", "--analytic", "--table", table_path()}).code == 2);
  CHECK(ymh_run({"verify", "--abelian", "z1", "--fd", "-1"}).code == 2);

  const Result s = ymh_run({"report", "--in", rep.string()});
  CHECK(s.code == 0);
  CHECK(s.out.find("status=pass") != std::string::npos);
  CHECK(ymh_run({"report", "--in", rep.string(), "--threshold", "1e-9"}).code == 1);
  CHECK(ymh_run({"report", "--in", "/nonexistent"}).code == 2);
}

TEST_CASE("lax") {
  const Result r = ymh_run({"lax", "--poly", "2*z1^2+z2^2-4", "--table", table_path(), "--zetas", "1,i,2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("zeta=1 direct=") != std::string::npos);
  CHECK(r.out.find("zeta=0+1i direct=") != std::string::npos);
  CHECK(r.out.find("zeta=2 direct=") != std::string::npos);
  CHECK(ymh_run({"lax", "--abelian", "z1^2", "--zetas", "0"}).code == 2);
  CHECK(ymh_run({"lax", "--abelian", "z1^2", "--zetas", "1,,2"}).code == 2);
  CHECK(ymh_run({"lax", "--abelian", "z1^3+z1*z2", "--analytic", "--zetas", "1,i,2"}).code == 0);
}

TEST_CASE("lift") {
  const Result r = ymh_run({"lift", "--abelian", "z1^2", "--analytic"});
  CHECK(r.code == 0);
  CHECK(r.out.find("octonion[7]=0\n") != std::string::npos);
  const Result p = ymh_run({"lift", "--poly", "z1*(z1+2*z2)", "--table", table_path(), "--samples", "10"});
  CHECK(p.code == 0);
  CHECK(p.out.find("a4_strong[18]=") != std::string::npos);
}
