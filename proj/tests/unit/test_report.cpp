#include "doctest.h"
#include "ymh/report.hpp"

using namespace ymh;

TEST_CASE("report lines carry every field") {
  ResidualReport r;
  r.record(EquationId::DbarPhi, 1.25e-5, 1e-3);
  r.record(EquationId::DbarPhi, 2.5e-5, 1e-3);
  r.record(EquationId::Gholo, 0.0, 0.0);
  const std::string text = format_report(r);
  CHECK(text.find("equation=DbarPhi max_abs=2.5e-05 rms=") == 0);
  CHECK(text.find("n_samples=2 fd_step=0.001\n") != std::string::npos);
  CHECK(text.find("equation=Gholo max_abs=0 rms=0 n_samples=1 fd_step=0\n") != std::string::npos);
}

TEST_CASE("report round-trip is exact") {
  ResidualReport r;
  r.record(EquationId::Octonion8, 0.1 + 0.2, 1e-3);
  r.record(EquationId::Octonion8, 1.0 / 3.0, 1e-3);
  r.record(EquationId::KW4, 7.77e-300, 5e-4);
  const ResidualReport back = parse_report("# comment\n\n" + format_report(r));
  CHECK(back == r);
  CHECK(format_report(back) == format_report(r));
}

TEST_CASE("malformed reports are rejected") {
  CHECK_THROWS_AS(parse_report("equation=Bogus max_abs=1 rms=1 n_samples=1 fd_step=0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_report("equation=F20 max_abs=1 rms=1 n_samples=1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_report("equation=F20 max_abs=x rms=1 n_samples=1 fd_step=0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_report("equation=F20 max_abs=1 rms=1 n_samples=1 fd_step=0 extra=2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_report("garbage\n"), std::invalid_argument);
  CHECK(parse_report("").entries().empty());
}
