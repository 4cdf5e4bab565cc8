#include "ymh/painleve.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace ymh {

namespace {

using ld = long double;

// Blow-up threshold on |psi + log r| once r >= kBlowupMinRadius.
constexpr ld kBlowupEta = 8.0L;
constexpr double kBlowupMinRadius = 0.5;
// Splice search starts here; below, the nonlinearity is not negligible.
constexpr double kSpliceMinRadius = 2.0;

struct State {
  ld psi;
  ld dpsi;
};

State operator+(State a, State b) { return {a.psi + b.psi, a.dpsi + b.dpsi}; }
State operator*(ld s, State a) { return {s * a.psi, s * a.dpsi}; }

State rhs(ld r, const State& y) {
  return {y.dpsi, -y.dpsi / r + 2.0L * (r * r * std::exp(y.psi) - std::exp(-y.psi))};
}

template <class T>
void series_coefficients(T psi0, T& a, T& b, T& c) {
  const T ep = std::exp(psi0);
  const T em = std::exp(-psi0);
  a = -em / 2;
  b = (ep + a * em) / 8;
  c = (2 * ep * a + 2 * em * (b - a * a / 2)) / 36;
}

std::vector<double> make_nodes(double r_start, double r_max, double h) {
  std::vector<double> nodes{0.0};
  const int n_log = static_cast<int>(std::ceil(std::log(1.0 / r_start) / std::log1p(h)));
  const double ratio = std::pow(1.0 / r_start, 1.0 / n_log);
  for (int k = 0; k < n_log; ++k) nodes.push_back(r_start * std::pow(ratio, k));
  nodes.push_back(1.0);
  for (int k = 1;; ++k) {
    const double r = 1.0 + k * h;
    if (r >= r_max - 0.5 * h) break;
    nodes.push_back(r);
  }
  nodes.push_back(r_max);
  return nodes;
}

class Stepper {
 public:
  Stepper(const RadialSolveOptions& opts, double tol) : opts_(opts), tol_(tol * 1e-2L) {}

  /// Advance y from ra to rb; false if the state stopped being finite.
  bool advance(ld ra, ld rb, State& y) {
    if (opts_.integrator == Integrator::ClassicalRK4) return rk4(ra, rb, y);
    return dopri(ra, rb, y);
  }

 private:
  bool rk4(ld ra, ld rb, State& y) const {
    const int n = std::max(1, opts_.rk4_substeps);
    const ld h = (rb - ra) / n;
    for (int k = 0; k < n; ++k) {
      const ld r = ra + k * h;
      const State k1 = rhs(r, y);
      const State k2 = rhs(r + h / 2, y + (h / 2) * k1);
      const State k3 = rhs(r + h / 2, y + (h / 2) * k2);
      const State k4 = rhs(r + h, y + h * k3);
      y = y + (h / 6) * (k1 + 2.0L * k2 + 2.0L * k3 + k4);
      if (!std::isfinite(y.psi) || !std::isfinite(y.dpsi)) return false;
    }
    return true;
  }

  bool dopri(ld ra, ld rb, State& y) {
    static constexpr ld a21 = 1.0L / 5;
    static constexpr ld a31 = 3.0L / 40, a32 = 9.0L / 40;
    static constexpr ld a41 = 44.0L / 45, a42 = -56.0L / 15, a43 = 32.0L / 9;
    static constexpr ld a51 = 19372.0L / 6561, a52 = -25360.0L / 2187, a53 = 64448.0L / 6561,
                        a54 = -212.0L / 729;
    static constexpr ld a61 = 9017.0L / 3168, a62 = -355.0L / 33, a63 = 46732.0L / 5247,
                        a64 = 49.0L / 176, a65 = -5103.0L / 18656;
    static constexpr ld b1 = 35.0L / 384, b3 = 500.0L / 1113, b4 = 125.0L / 192,
                        b5 = -2187.0L / 6784, b6 = 11.0L / 84;
    static constexpr ld e1 = 71.0L / 57600, e3 = -71.0L / 16695, e4 = 71.0L / 1920,
                        e5 = -17253.0L / 339200, e6 = 22.0L / 525, e7 = -1.0L / 40;

    ld r = ra;
    int guard = 0;
    while (r < rb) {
      if (++guard > 100000) return false;
      ld h = std::min(h_, rb - r);
      const bool last = (h == rb - r);
      const State k1 = rhs(r, y);
      const State k2 = rhs(r + h / 5, y + h * (a21 * k1));
      const State k3 = rhs(r + 3 * h / 10, y + h * (a31 * k1 + a32 * k2));
      const State k4 = rhs(r + 4 * h / 5, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const State k5 =
          rhs(r + 8 * h / 9, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const State k6 =
          rhs(r + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const State y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      if (!std::isfinite(y5.psi) || !std::isfinite(y5.dpsi)) return false;
      const State k7 = rhs(r + h, y5);
      const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const ld sc_psi = tol_ * (1 + std::max(std::fabs(y.psi), std::fabs(y5.psi)));
      const ld sc_dpsi = tol_ * (1 + std::max(std::fabs(y.dpsi), std::fabs(y5.dpsi)));
      const ld en = std::max(std::fabs(err.psi) / sc_psi, std::fabs(err.dpsi) / sc_dpsi);
      const ld factor =
          en == 0 ? 5.0L : std::clamp(0.9L * std::pow(en, -0.2L), 0.2L, 5.0L);
      if (en <= 1) {
        r = last ? rb : r + h;
        y = y5;
        // Keep the suggestion from the unclipped step size.
        if (!last || factor < 1) h_ = h * factor;
      } else {
        h_ = h * factor;
      }
    }
    return true;
  }

  const RadialSolveOptions& opts_;
  ld tol_;
  ld h_ = 1e-3L;
};

struct Trajectory {
  std::vector<ld> psi;
  std::vector<ld> dpsi;
  std::size_t reached = 0;  // number of nodes with valid data
  ld defect = 0;
};

Trajectory integrate(ld psi0, const std::vector<double>& nodes, double tol,
                     const RadialSolveOptions& opts, bool record) {
  Trajectory tr;
  if (record) {
    tr.psi.reserve(nodes.size());
    tr.dpsi.reserve(nodes.size());
    tr.psi.push_back(psi0);
    tr.dpsi.push_back(0);
  }
  ld a, b, c;
  series_coefficients(psi0, a, b, c);
  const ld r1 = nodes[1];
  State y{psi0 + r1 * r1 * (a + r1 * r1 * (b + r1 * r1 * c)),
          r1 * (2 * a + r1 * r1 * (4 * b + 6 * c * r1 * r1))};
  if (record) {
    tr.psi.push_back(y.psi);
    tr.dpsi.push_back(y.dpsi);
  }
  Stepper stepper(opts, tol);
  tr.reached = 2;
  const ld inf = std::numeric_limits<ld>::infinity();
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    const ld ra = nodes[i];
    const ld rb = nodes[i + 1];
    const ld eta_before = y.psi + std::log(ra);
    if (!stepper.advance(ra, rb, y)) {
      tr.defect = eta_before >= 0 ? inf : -inf;
      return tr;
    }
    const ld eta = y.psi + std::log(rb);
    if (rb >= kBlowupMinRadius && std::fabs(eta) > kBlowupEta) {
      tr.defect = eta > 0 ? inf : -inf;
      return tr;
    }
    if (record) {
      tr.psi.push_back(y.psi);
      tr.dpsi.push_back(y.dpsi);
    }
    tr.reached = i + 2;
  }
  tr.defect = y.psi + std::log(static_cast<ld>(nodes.back()));
  return tr;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, const char* what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw TableError(std::string("malformed number for ") + what + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string to_string(Integrator kind) {
  return kind == Integrator::ClassicalRK4 ? "rk4" : "dopri45";
}

Integrator integrator_from_string(const std::string& name) {
  if (name == "rk4") return Integrator::ClassicalRK4;
  if (name == "dopri45") return Integrator::DormandPrince45;
  throw std::invalid_argument("unknown integrator '" + name + "' (expected dopri45 or rk4)");
}

double radial_second_derivative(double r, double psi, double dpsi) {
  return -dpsi / r + 2.0 * (r * r * std::exp(psi) - std::exp(-psi));
}

PsiSample regular_series(double psi0, double r) {
  double a, b, c;
  series_coefficients(psi0, a, b, c);
  const double r2 = r * r;
  return {psi0 + r2 * (a + r2 * (b + r2 * c)), r * (2 * a + r2 * (4 * b + 6 * c * r2)),
          2 * a + r2 * (12 * b + 30 * c * r2)};
}

FarField far_field(double amplitude, double r) {
  const double x = (4.0 / 3.0) * r * std::sqrt(r);
  if (amplitude == 0.0 || x > 700.0) return {};
  return {amplitude * std::cyl_bessel_k(0.0, x),
          -amplitude * std::cyl_bessel_k(1.0, x) * 2.0 * std::sqrt(r)};
}

TranscendentTable::TranscendentTable(TableData data) : d_(std::move(data)) {
  const std::size_t n = d_.r.size();
  if (n < 3 || d_.psi.size() != n || d_.dpsi.size() != n)
    throw TableError("table needs at least 3 nodes and equal-length columns");
  if (d_.r.front() != 0.0) throw TableError("first node must be r = 0");
  if (d_.dpsi.front() != 0.0) throw TableError("dpsi(0) must be 0 (regularity)");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(d_.r[i]) || !std::isfinite(d_.psi[i]) || !std::isfinite(d_.dpsi[i]))
      throw TableError("non-finite table entry at node " + std::to_string(i));
    if (i > 0 && !(d_.r[i] > d_.r[i - 1]))
      throw TableError("r nodes must be strictly increasing (node " + std::to_string(i) + ")");
  }
  if (d_.r.back() != d_.r_max) throw TableError("last node must equal r_max");
  if (d_.psi.front() != d_.psi0) throw TableError("psi(0) must equal psi0");
  ddpsi_.resize(n);
  ddpsi_[0] = -std::exp(-d_.psi0);
  for (std::size_t i = 1; i < n; ++i)
    ddpsi_[i] = radial_second_derivative(d_.r[i], d_.psi[i], d_.dpsi[i]);
}

PsiSample TranscendentTable::sample(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("psi_at: r must be nonnegative");
  if (r < d_.r[1]) {
    PsiSample s = regular_series(d_.psi0, r);
    if (r > 0.0) s.ddpsi = radial_second_derivative(r, s.psi, s.dpsi);
    return s;
  }
  if (r > d_.r_max) {
    const FarField f = far_field(d_.tail_amplitude, r);
    const double psi = -std::log(r) + f.eta;
    const double dpsi = -1.0 / r + f.deta;
    return {psi, dpsi, radial_second_derivative(r, psi, dpsi)};
  }
  auto it = std::upper_bound(d_.r.begin(), d_.r.end(), r);
  std::size_t i = static_cast<std::size_t>(it - d_.r.begin());
  i = std::clamp<std::size_t>(i, 1, d_.r.size() - 1) - 1;
  const double h = d_.r[i + 1] - d_.r[i];
  const double t = (r - d_.r[i]) / h;
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  // Quintic Hermite basis on [0, 1] and t-derivatives.
  const double H0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
  const double H1 = t - 6 * t3 + 8 * t4 - 3 * t5;
  const double H2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
  const double H3 = 0.5 * t3 - t4 + 0.5 * t5;
  const double H4 = -4 * t3 + 7 * t4 - 3 * t5;
  const double H5 = 10 * t3 - 15 * t4 + 6 * t5;
  const double D0 = -30 * t2 + 60 * t3 - 30 * t4;
  const double D1 = 1 - 18 * t2 + 32 * t3 - 15 * t4;
  const double D2 = t - 4.5 * t2 + 6 * t3 - 2.5 * t4;
  const double D3 = 1.5 * t2 - 4 * t3 + 2.5 * t4;
  const double D4 = -12 * t2 + 28 * t3 - 15 * t4;
  const double D5 = 30 * t2 - 60 * t3 + 30 * t4;
  const double f0 = d_.psi[i], f1 = d_.psi[i + 1];
  const double g0 = d_.dpsi[i], g1 = d_.dpsi[i + 1];
  const double k0 = ddpsi_[i], k1 = ddpsi_[i + 1];
  const double psi = H0 * f0 + h * H1 * g0 + h * h * H2 * k0 + h * h * H3 * k1 + h * H4 * g1 + H5 * f1;
  const double dpsi =
      (D0 * f0 + D5 * f1) / h + D1 * g0 + D4 * g1 + h * (D2 * k0 + D3 * k1);
  return {psi, dpsi, radial_second_derivative(r, psi, dpsi)};
}

double TranscendentTable::dpsi_over_r(double r) const {
  if (r < d_.r[1]) {
    double a, b, c;
    series_coefficients(d_.psi0, a, b, c);
    const double r2 = r * r;
    return 2 * a + r2 * (4 * b + 6 * c * r2);
  }
  return sample(r).dpsi / r;
}

PsiSample psi_at(const TranscendentTable& t, double r) { return t.sample(r); }

double shooting_defect(double psi0, double r_max, double tol, const RadialSolveOptions& opts) {
  const auto nodes = make_nodes(opts.r_start, r_max, opts.uniform_spacing);
  return static_cast<double>(integrate(psi0, nodes, tol, opts, false).defect);
}

TranscendentTable solve_radial(double r_max, double tol, const RadialSolveOptions& opts) {
  if (!(r_max >= 5.0)) throw std::invalid_argument("solve_radial: r_max must be >= 5");
  if (!(tol > 0.0 && tol <= 1e-6))
    throw std::invalid_argument("solve_radial: tol must satisfy 0 < tol <= 1e-6");
  if (!(opts.psi0_lo < opts.psi0_hi))
    throw std::invalid_argument("solve_radial: empty psi0 bracket");

  const auto nodes = make_nodes(opts.r_start, r_max, opts.uniform_spacing);
  std::vector<ShootingStep> history;
  auto defect = [&](ld psi0) {
    const ld s = integrate(psi0, nodes, tol, opts, false).defect;
    history.push_back({static_cast<double>(psi0), static_cast<double>(s)});
    return s;
  };

  ld lo = opts.psi0_lo, hi = opts.psi0_hi;
  ld s_lo = defect(lo), s_hi = defect(hi);
  for (int k = 0; k < opts.bracket_expansions && s_lo != 0 && s_hi != 0 && (s_lo < 0) == (s_hi < 0);
       ++k) {
    const ld mid = (lo + hi) / 2, half = hi - lo;
    lo = mid - half;
    hi = mid + half;
    s_lo = defect(lo);
    s_hi = defect(hi);
  }
  if (s_lo == 0) hi = lo, s_hi = s_lo;
  else if (s_hi == 0) lo = hi, s_lo = s_hi;
  else if ((s_lo < 0) == (s_hi < 0))
    throw BracketNotFound("shooting residual has the same sign at psi0 = " +
                          format_double(static_cast<double>(lo)) + " and " +
                          format_double(static_cast<double>(hi)));
  const bool increasing = s_lo < 0 || s_hi > 0;

  bool converged = (lo == hi);
  for (int it = 0; it < opts.max_iterations && !converged; ++it) {
    const ld mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) {
      converged = true;
      break;
    }
    const ld s = defect(mid);
    if (s == 0) {
      lo = hi = mid;
      s_lo = s_hi = s;
      converged = true;
    } else if ((s < 0) == increasing) {
      lo = mid;
      s_lo = s;
    } else {
      hi = mid;
      s_hi = s;
    }
  }
  if (!converged)
    throw NonConvergence("shooting did not converge within " +
                         std::to_string(opts.max_iterations) + " iterations");

  const ld psi0 = std::fabs(s_lo) <= std::fabs(s_hi) ? lo : hi;
  Trajectory tr = integrate(psi0, nodes, tol, opts, true);
  if (tr.reached != nodes.size() || !(std::fabs(tr.defect) <= opts.boundary_tolerance))
    throw NonConvergence("boundary defect " + format_double(static_cast<double>(tr.defect)) +
                         " exceeds tolerance " + format_double(opts.boundary_tolerance));

  // Replace the tail, where the amplified growing mode dominates the
  // numerical trajectory, by the decaying far-field solution. The splice
  // node is where the computed log-derivative of eta = psi + log r best
  // matches that of K0(4/3 r^{3/2}).
  std::size_t splice = nodes.size() - 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double r = nodes[i];
    if (r < kSpliceMinRadius) continue;
    const double eta = static_cast<double>(tr.psi[i] + std::log(static_cast<ld>(r)));
    const double deta = static_cast<double>(tr.dpsi[i] + 1.0L / r);
    const double x = (4.0 / 3.0) * r * std::sqrt(r);
    if (eta == 0.0 || x > 700.0) continue;
    const double slope = -2.0 * std::sqrt(r) * std::cyl_bessel_k(1.0, x) / std::cyl_bessel_k(0.0, x);
    const double mismatch = std::fabs(deta / (eta * slope) - 1.0);
    if (mismatch < best) {
      best = mismatch;
      splice = i;
    }
  }
  const double r_splice = nodes[splice];
  const double eta_splice =
      static_cast<double>(tr.psi[splice] + std::log(static_cast<ld>(r_splice)));
  const double x_splice = (4.0 / 3.0) * r_splice * std::sqrt(r_splice);
  const double amplitude = eta_splice / std::cyl_bessel_k(0.0, x_splice);

  TableData d;
  d.r = nodes;
  d.psi.resize(nodes.size());
  d.dpsi.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i <= splice) {
      d.psi[i] = static_cast<double>(tr.psi[i]);
      d.dpsi[i] = static_cast<double>(tr.dpsi[i]);
    } else {
      const FarField f = far_field(amplitude, nodes[i]);
      d.psi[i] = -std::log(nodes[i]) + f.eta;
      d.dpsi[i] = -1.0 / nodes[i] + f.deta;
    }
  }
  d.psi0 = static_cast<double>(psi0);
  d.psi[0] = d.psi0;
  d.r_max = r_max;
  d.tolerance = tol;
  d.boundary_defect = static_cast<double>(tr.defect);
  d.splice_radius = r_splice;
  d.tail_amplitude = amplitude;
  d.integrator = opts.integrator;

  const auto [mn, mx] = std::minmax_element(d.psi.begin(), d.psi.end());
  if (*mx - *mn < 1e-12)
    throw NonConvergence("solver produced a constant table; not the regular solution");

  TranscendentTable table(std::move(d));
  table.history_ = std::move(history);
  table.monotone_ = increasing;
  return table;
}

PiiiCrosscheck piii_crosscheck(const TranscendentTable& tab, double t_lo, int n) {
  PiiiCrosscheck out;
  out.h_min = std::numeric_limits<double>::infinity();
  const double t_hi = tab.r_max() * std::sqrt(tab.r_max());
  for (int k = 0; k < n; ++k) {
    const double t = t_lo + (t_hi - t_lo) * k / (n - 1);
    const double r = std::cbrt(t * t);
    const PsiSample s = tab.sample(r);
    const double rt = (2.0 / 3.0) / std::cbrt(t);
    const double rtt = -(2.0 / 9.0) / (t * std::cbrt(t));
    const double g1 = s.dpsi * rt;
    const double g2 = s.ddpsi * rt * rt + s.dpsi * rtt;
    const double h = std::exp(-0.5 * s.psi) / std::cbrt(t);
    const double lh1 = -1.0 / (3.0 * t) - 0.5 * g1;  // h'/h
    const double h1 = h * lh1;
    const double h2 = h * (lh1 * lh1 + 1.0 / (3.0 * t * t) - 0.5 * g2);
    const double res = h2 - h1 * h1 / h + h1 / t + 4.0 / (9.0 * h) - 4.0 * h * h * h / 9.0;
    out.max_residual = std::max(out.max_residual, std::fabs(res));
    out.h_min = std::min(out.h_min, h);
    out.h_right = h;
    ++out.n_samples;
  }
  return out;
}

TableValidation validate_table(const TranscendentTable& t, double boundary_tolerance) {
  TableValidation v;
  const auto& r = t.r_nodes();
  const auto& psi = t.psi_values();
  const auto& dpsi = t.dpsi_values();
  v.boundary_defect = std::fabs(psi.back() + std::log(t.r_max()));
  if (!(v.boundary_defect <= boundary_tolerance)) {
    v.ok = false;
    v.message = "far-field condition violated: |psi(r_max) + log r_max| = " +
                format_double(v.boundary_defect);
    return v;
  }
  const PsiSample first = regular_series(t.psi0(), r[1]);
  v.max_step_defect = std::max(std::fabs(first.psi - psi[1]), std::fabs(first.dpsi - dpsi[1]));

  auto f = [](double rr, double p, double dp) {
    return std::pair{dp, radial_second_derivative(rr, p, dp)};
  };
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    const double span = r[i + 1] - r[i];
    const double hmax = std::min(1e-3, 0.05 * r[i]);
    const int n = std::max(1, static_cast<int>(std::ceil(span / hmax)));
    const double h = span / n;
    double p = psi[i], dp = dpsi[i];
    for (int k = 0; k < n; ++k) {
      const double rr = r[i] + k * h;
      const auto [a1, b1] = f(rr, p, dp);
      const auto [a2, b2] = f(rr + h / 2, p + h / 2 * a1, dp + h / 2 * b1);
      const auto [a3, b3] = f(rr + h / 2, p + h / 2 * a2, dp + h / 2 * b2);
      const auto [a4, b4] = f(rr + h, p + h * a3, dp + h * b3);
      p += h / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
      dp += h / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
    }
    v.max_step_defect =
        std::max({v.max_step_defect, std::fabs(p - psi[i + 1]), std::fabs(dp - dpsi[i + 1])});
  }
  const double limit = std::max(t.solver_tolerance(), 1e-11);
  if (!(v.max_step_defect <= limit)) {
    v.ok = false;
    v.message = "node data does not satisfy the ODE: interval defect " +
                format_double(v.max_step_defect) + " > " + format_double(limit);
  }
  return v;
}

void write_table(std::ostream& os, const TranscendentTable& t) {
  const TableData& d = t.data();
  os << "# ymh radial transcendent table\n";
  os << "# psi0=" << format_double(d.psi0) << '\n';
  os << "# r_max=" << format_double(d.r_max) << '\n';
  os << "# tolerance=" << format_double(d.tolerance) << '\n';
  os << "# boundary_defect=" << format_double(d.boundary_defect) << '\n';
  os << "# splice_radius=" << format_double(d.splice_radius) << '\n';
  os << "# tail_amplitude=" << format_double(d.tail_amplitude) << '\n';
  os << "# integrator=" << to_string(d.integrator) << '\n';
  os << "r,psi,dpsi\n";
  for (std::size_t i = 0; i < d.r.size(); ++i)
    os << format_double(d.r[i]) << ',' << format_double(d.psi[i]) << ','
       << format_double(d.dpsi[i]) << '\n';
}

TranscendentTable read_table(std::istream& is) {
  TableData d;
  bool have_psi0 = false, have_rmax = false, have_tol = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      key.erase(key.find_last_not_of(' ') + 1);
      const std::string_view value = std::string_view(line).substr(eq + 1);
      if (key == "psi0") d.psi0 = parse_double(value, "psi0"), have_psi0 = true;
      else if (key == "r_max") d.r_max = parse_double(value, "r_max"), have_rmax = true;
      else if (key == "tolerance") d.tolerance = parse_double(value, "tolerance"), have_tol = true;
      else if (key == "boundary_defect") d.boundary_defect = parse_double(value, key.c_str());
      else if (key == "splice_radius") d.splice_radius = parse_double(value, key.c_str());
      else if (key == "tail_amplitude") d.tail_amplitude = parse_double(value, key.c_str());
      else if (key == "integrator") {
        try {
          d.integrator = integrator_from_string(std::string(value));
        } catch (const std::invalid_argument& e) {
          throw TableError(e.what());
        }
      }
      continue;
    }
    if (line == "r,psi,dpsi") continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos)
      throw TableError("line " + std::to_string(lineno) + ": expected 'r,psi,dpsi'");
    const std::string_view sv(line);
    d.r.push_back(parse_double(sv.substr(0, c1), "r"));
    d.psi.push_back(parse_double(sv.substr(c1 + 1, c2 - c1 - 1), "psi"));
    d.dpsi.push_back(parse_double(sv.substr(c2 + 1), "dpsi"));
  }
  if (!have_psi0 || !have_rmax || !have_tol)
    throw TableError("table header must provide psi0, r_max and tolerance");
  if (d.splice_radius == 0.0) d.splice_radius = d.r_max;
  return TranscendentTable(std::move(d));
}

}  // namespace ymh
