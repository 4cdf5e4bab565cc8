#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "ymh/painleve.hpp"

using namespace ymh;

namespace {

// Reference values from an independent scipy DOP853 shooting (rtol 1e-13).
constexpr double kPsi0 = 0.1700344307417848;
constexpr double kPsiAt[][2] = {{0.25, 0.14406933037}, {0.5, 0.07066353959}, {1.0, -0.16950017450},
                                {2.0, -0.70233057140}, {3.0, -1.09890430631}};

}  // namespace

TEST_CASE("regular series satisfies the ODE near the origin") {
  for (double psi0 : {-1.0, 0.17, 1.5}) {
    for (double r : {1e-4, 1e-3, 1e-2}) {
      const PsiSample s = regular_series(psi0, r);
      CHECK(std::fabs(s.ddpsi - radial_second_derivative(r, s.psi, s.dpsi)) < 1e-9);
    }
    CHECK(regular_series(psi0, 0.0).dpsi == 0.0);
    CHECK(regular_series(psi0, 0.0).ddpsi == doctest::Approx(-std::exp(-psi0)).epsilon(1e-15));
  }
}

TEST_CASE("-log r solves the ODE exactly") {
  for (double r : {0.5, 2.0, 7.0}) CHECK(radial_second_derivative(r, -std::log(r), -1.0 / r) == doctest::Approx(1.0 / (r * r)));
}

TEST_CASE("solve_radial: boundary condition and regularity") {
  const auto& t = *oracle::table();
  CHECK(std::fabs(t.data().boundary_defect) < 1e-4);
  CHECK(std::fabs(t.psi_values().back() + std::log(8.0)) < 1e-4);
  CHECK(t.r_nodes().front() == 0.0);
  CHECK(t.dpsi_values().front() == 0.0);
  CHECK(t.r_max() == 8.0);
  for (std::size_t i = 1; i < t.r_nodes().size(); ++i) CHECK(t.r_nodes()[i] > t.r_nodes()[i - 1]);
  CHECK(t.shooting_monotone());
  CHECK_FALSE(t.shooting_history().empty());
}

TEST_CASE("solve_radial: psi0 agrees with an independent RK4 shooting") {
  const double reference = oracle::rk4_shoot_psi0(8.0);
  CHECK(std::fabs(oracle::table()->psi0() - reference) < 1e-9);
  CHECK(std::fabs(oracle::table()->psi0() - kPsi0) < 1e-9);
}

TEST_CASE("solve_radial: the two integrators agree") {
  RadialSolveOptions opts;
  opts.integrator = Integrator::ClassicalRK4;
  const auto rk = solve_radial(8.0, 1e-8, opts);
  CHECK(std::fabs(rk.psi0() - oracle::table()->psi0()) < 1e-6);
  CHECK(rk.data().integrator == Integrator::ClassicalRK4);
}

TEST_CASE("solve_radial: step refinement moves psi0 by less than 10 tol") {
  RadialSolveOptions coarse, fine;
  coarse.integrator = fine.integrator = Integrator::ClassicalRK4;
  fine.rk4_substeps = 2 * coarse.rk4_substeps;
  const double tol = 1e-8;
  CHECK(std::fabs(solve_radial(8.0, tol, coarse).psi0() - solve_radial(8.0, tol, fine).psi0()) < 10 * tol);
}

TEST_CASE("solve_radial: table is not constant") {
  const auto& psi = oracle::table()->psi_values();
  CHECK(psi.front() - psi.back() > 2.0);
}

TEST_CASE("solve_radial: argument errors") {
  CHECK_THROWS_AS(solve_radial(2.0, 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(solve_radial(8.0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(solve_radial(8.0, 0.0), std::invalid_argument);
  RadialSolveOptions opts;
  opts.psi0_lo = 0.5;
  opts.psi0_hi = 1.0;
  opts.bracket_expansions = 0;
  CHECK_THROWS_AS(solve_radial(8.0, 1e-8, opts), BracketNotFound);
  opts.max_iterations = 3;
  opts.psi0_lo = -1.0;
  CHECK_THROWS_AS(solve_radial(8.0, 1e-8, opts), NonConvergence);
}

TEST_CASE("solve_radial: bracket widening recovers a bracket that misses the root") {
  RadialSolveOptions opts;
  opts.psi0_lo = 0.5;
  opts.psi0_hi = 1.0;
  CHECK(solve_radial(8.0, 1e-8, opts).psi0() == doctest::Approx(kPsi0).epsilon(1e-9));
}

TEST_CASE("psi_at: endpoints and far field") {
  const auto& t = *oracle::table();
  const PsiSample s0 = psi_at(t, 0.0);
  CHECK(s0.psi == t.psi0());
  CHECK(s0.dpsi == 0.0);
  CHECK(s0.ddpsi == doctest::Approx(-std::exp(-t.psi0())).epsilon(1e-12));
  CHECK(std::fabs(psi_at(t, 8.0).psi + std::log(8.0)) < 1e-4);
  CHECK(std::fabs(psi_at(t, 20.0).psi + std::log(20.0)) < 1e-15);
  CHECK_THROWS(psi_at(t, -1.0));
}

TEST_CASE("psi_at: matches direct re-integration and the reference values") {
  const auto& t = *oracle::table();
  for (const auto& [r, ref] : kPsiAt) {
    const PsiSample s = psi_at(t, r);
    CHECK(std::fabs(s.psi - ref) < 1e-9);
    if (r <= 2.0) {
      const auto y = oracle::rk4_psi(t.psi0(), r);
      CHECK(std::fabs(s.psi - y[0]) < 1e-6);
      CHECK(std::fabs(s.dpsi - y[1]) < 1e-6);
    }
  }
  for (double r : {0.0123, 0.37, 1.234567, 5.5}) {
    const PsiSample s = psi_at(t, r);
    CHECK(s.ddpsi == doctest::Approx(radial_second_derivative(r, s.psi, s.dpsi)).epsilon(1e-14));
  }
}

TEST_CASE("psi_at: ODE residual of the interpolant between nodes") {
  // psi'' from the interpolated psi' by central differences against the ODE.
  const auto& t = *oracle::table();
  const double h = 1e-4;
  for (double r = 0.05; r < 7.9; r += 0.173) {
    const double dd = (psi_at(t, r + h).dpsi - psi_at(t, r - h).dpsi) / (2 * h);
    const PsiSample s = psi_at(t, r);
    CHECK(std::fabs(dd - radial_second_derivative(r, s.psi, s.dpsi)) < 1e-6);
  }
}

TEST_CASE("far field: -log r plus the decaying Bessel mode") {
  const FarField f = far_field(-0.6, 4.0);
  const double x = 4.0 / 3.0 * 8.0;
  CHECK(f.eta == doctest::Approx(-0.6 * std::cyl_bessel_k(0.0, x)).epsilon(1e-14));
  CHECK(f.eta < 0.0);
  CHECK(far_field(-0.6, 8.0).eta > -1e-13);
}

TEST_CASE("Painleve-III form") {
  const PiiiCrosscheck c = piii_crosscheck(*oracle::table());
  CHECK(c.max_residual < 1e-6);
  CHECK(std::fabs(c.h_right - 1.0) < 1e-3);
  CHECK(c.h_min > 0.0);
  CHECK(c.n_samples == 2000);
}

TEST_CASE("Painleve-III form by hand at one point") {
  // h(t) = t^{-1/3} e^{-psi/2}; derivatives by the chain rule written out here.
  const auto& tab = *oracle::table();
  const double t = 2.0, r = std::pow(t, 2.0 / 3.0);
  const PsiSample s = psi_at(tab, r);
  const double rt = 2.0 / 3.0 * std::pow(t, -1.0 / 3.0);
  const double rtt = -2.0 / 9.0 * std::pow(t, -4.0 / 3.0);
  const double g = -std::log(t) / 3.0 - s.psi / 2.0;  // log h
  const double gt = -1.0 / (3.0 * t) - s.dpsi * rt / 2.0;
  const double gtt = 1.0 / (3.0 * t * t) - (s.ddpsi * rt * rt + s.dpsi * rtt) / 2.0;
  const double h = std::exp(g), ht = h * gt, htt = h * (gtt + gt * gt);
  const double residual = htt - ht * ht / h + ht / t + 4.0 / (9.0 * h) - 4.0 * h * h * h / 9.0;
  CHECK(std::fabs(residual) < 1e-10);
}

TEST_CASE("validate_table accepts the solved table and rejects a perturbed one") {
  const auto& t = *oracle::table();
  const TableValidation v = validate_table(t);
  CHECK(v.ok);
  CHECK(v.max_step_defect <= std::max(t.solver_tolerance(), 1e-11));
  TableData d = t.data();
  d.psi[d.psi.size() / 2] += 1e-5;
  CHECK_FALSE(validate_table(TranscendentTable(d)).ok);
}

TEST_CASE("table structure errors") {
  TableData d = oracle::table()->data();
  SUBCASE("first node") {
    d.r[0] = 1e-9;
    CHECK_THROWS_AS(TranscendentTable{d}, TableError);
  }
  SUBCASE("regularity") {
    d.dpsi[0] = 1e-9;
    CHECK_THROWS_AS(TranscendentTable{d}, TableError);
  }
  SUBCASE("ordering") {
    std::swap(d.r[5], d.r[6]);
    CHECK_THROWS_AS(TranscendentTable{d}, TableError);
  }
}

TEST_CASE("table file round-trip is bit exact") {
  const auto& t = *oracle::table();
  std::stringstream a;
  write_table(a, t);
  const std::string text = a.str();
  CHECK(text.rfind("# ymh radial transcendent table", 0) == 0);
  CHECK(text.find("# psi0=") != std::string::npos);
  std::istringstream in(text);
  const TranscendentTable back = read_table(in);
  CHECK(back.data() == t.data());
  std::stringstream b;
  write_table(b, back);
  CHECK(b.str() == text);
}

TEST_CASE("read_table rejects malformed files") {
  std::istringstream missing("r,psi,dpsi\n0,0.17,0\n");
  CHECK_THROWS_AS(read_table(missing), TableError);
  std::istringstream junk("# psi0=0.1\n# r_max=8\n# tolerance=1e-8\nr,psi,dpsi\n0,abc,0\n");
  CHECK_THROWS_AS(read_table(junk), TableError);
}
