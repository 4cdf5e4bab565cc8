#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ymh {

// Radial transcendent psi(r), r = |P|, solving
//
//   psi'' + psi'/r = 2 (r^2 e^psi - e^-psi),
//
// regular at r = 0 and with psi + log r -> 0 as r -> infinity. Equivalently
// h(t) = t^{-1/3} e^{-psi/2}, t = r^{3/2}, solves a Painleve-III equation.

enum class Integrator {
  DormandPrince45,  ///< adaptive embedded 5(4) pair
  ClassicalRK4,     ///< fixed substeps per node interval
};

std::string to_string(Integrator kind);
Integrator integrator_from_string(const std::string& name);

/// Shooting failed to find a sign change of psi(r_max) + log r_max.
class BracketNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shooting ran out of iterations or could not meet the boundary tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed table data (structure, not accuracy).
class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PsiSample {
  double psi = 0.0;
  double dpsi = 0.0;
  double ddpsi = 0.0;
};

struct ShootingStep {
  double psi0 = 0.0;
  double defect = 0.0;  ///< psi(r_max) + log r_max, or +-inf on blow-up
};

struct RadialSolveOptions {
  Integrator integrator = Integrator::DormandPrince45;
  int rk4_substeps = 4;
  /// Initial bracket for psi(0); doubled about its centre up to
  /// `bracket_expansions` times while the defect keeps one sign.
  double psi0_lo = -2.0;
  double psi0_hi = 2.0;
  int bracket_expansions = 4;
  int max_iterations = 200;
  double boundary_tolerance = 1e-4;
  /// Integration start; the regular series covers [0, r_start].
  double r_start = 1e-4;
  /// Node spacing beyond r = 1 (log-spaced below with matching ratio).
  double uniform_spacing = 1.0 / 256.0;
};

/// Raw node data of a table, as stored on disk.
struct TableData {
  std::vector<double> r;
  std::vector<double> psi;
  std::vector<double> dpsi;
  double psi0 = 0.0;
  double r_max = 0.0;
  double tolerance = 0.0;
  /// Raw shooting defect psi(r_max) + log r_max of the accepted trajectory.
  double boundary_defect = 0.0;
  /// Nodes at r > splice_radius hold the far-field form.
  double splice_radius = 0.0;
  /// C in psi = -log r + C K0(4/3 r^{3/2}) for the far field.
  double tail_amplitude = 0.0;
  Integrator integrator = Integrator::DormandPrince45;

  friend bool operator==(const TableData&, const TableData&) = default;
};

/// Tabulated transcendent. Immutable after construction; the constructor
/// checks node structure (r[0] = 0, strictly increasing, dpsi[0] = 0).
class TranscendentTable {
 public:
  explicit TranscendentTable(TableData data);

  const TableData& data() const { return d_; }
  const std::vector<double>& r_nodes() const { return d_.r; }
  const std::vector<double>& psi_values() const { return d_.psi; }
  const std::vector<double>& dpsi_values() const { return d_.dpsi; }
  double psi0() const { return d_.psi0; }
  double r_max() const { return d_.r_max; }
  double solver_tolerance() const { return d_.tolerance; }

  /// Shooting iterations that produced this table (empty for loaded tables).
  const std::vector<ShootingStep>& shooting_history() const { return history_; }
  /// True when every bisection step kept defect(lo) < 0 < defect(hi).
  bool shooting_monotone() const { return monotone_; }

  /// psi, psi' by quintic Hermite interpolation; psi'' from the ODE.
  PsiSample sample(double r) const;
  /// psi'(r)/r, finite at r = 0 (limit psi''(0)).
  double dpsi_over_r(double r) const;

 private:
  friend TranscendentTable solve_radial(double, double, const RadialSolveOptions&);

  TableData d_;
  std::vector<double> ddpsi_;
  std::vector<ShootingStep> history_;
  bool monotone_ = true;
};

/// psi'' implied by the ODE at r > 0.
double radial_second_derivative(double r, double psi, double dpsi);

/// Regular expansion psi0 + a r^2 + b r^4 + c r^6 about the origin.
PsiSample regular_series(double psi0, double r);

/// Far-field correction C K0(4/3 r^{3/2}) and its r-derivative.
struct FarField {
  double eta = 0.0;
  double deta = 0.0;
};
FarField far_field(double amplitude, double r);

/// Shooting residual psi(r_max; psi0) + log r_max (+-inf on blow-up).
double shooting_defect(double psi0, double r_max, double tol,
                       const RadialSolveOptions& opts = {});

/// Shoot on psi(0) and tabulate the regular solution on [0, r_max].
/// Requires r_max >= 5 and 0 < tol <= 1e-6.
TranscendentTable solve_radial(double r_max, double tol, const RadialSolveOptions& opts = {});

PsiSample psi_at(const TranscendentTable& t, double r);

struct PiiiCrosscheck {
  double max_residual = 0.0;
  double h_right = 0.0;  ///< h at t = r_max^{3/2}
  double h_min = 0.0;
  int n_samples = 0;
};

/// Residual of h'' - h'^2/h + h'/t + 4/(9h) - 4h^3/9 for h(t) = t^{-1/3} e^{-psi/2},
/// t = r^{3/2}, sampled on [t_lo, r_max^{3/2}].
PiiiCrosscheck piii_crosscheck(const TranscendentTable& t, double t_lo = 0.1, int n = 2000);

struct TableValidation {
  bool ok = true;
  std::string message;
  double boundary_defect = 0.0;   ///< |psi(r_max) + log r_max| of the stored nodes
  double max_step_defect = 0.0;   ///< worst node-to-node re-integration mismatch
};

/// Full invariant check, including re-integration of every node interval.
TableValidation validate_table(const TranscendentTable& t, double boundary_tolerance = 1e-4);

void write_table(std::ostream& os, const TranscendentTable& t);
/// Throws TableError on malformed input.
TranscendentTable read_table(std::istream& is);

}  // namespace ymh
