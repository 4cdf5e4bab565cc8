#include "ymh/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace ymh {

namespace {

constexpr std::array<std::string_view, 11> kNames{
    "DbarPhi", "FplusComm", "PhiPhiComm", "F20",       "DPhiSkew", "Lax",
    "Simpson", "KW4",       "Octonion8",  "A4strong8", "Gholo"};

const cplx kI{0.0, 1.0};

// Flat view of PointFields for finite differencing: phi, a_bar, a.
using Flat6 = std::array<ComplexMat2, 6>;

Flat6 flatten(const PointFields& f) {
  return {f.phi[0], f.phi[1], f.a_bar[0], f.a_bar[1], f.a[0], f.a[1]};
}

PointFields unflatten(const Flat6& v, const CPoint& z) {
  PointFields f;
  f.z = z;
  f.phi = {v[0], v[1]};
  f.a_bar = {v[2], v[3]};
  f.a = {v[4], v[5]};
  return f;
}

template <class T, std::size_t N>
std::array<T, N> lincomb(cplx a, const std::array<T, N>& x, cplx b, const std::array<T, N>& y) {
  std::array<T, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

// Directional derivative of g(t) at t = 0.
template <class G>
auto directional(G&& g, const StencilSpec& s) {
  const double h = s.fd_step;
  auto central = [&](double step) { return lincomb(0.5 / step, g(step), -0.5 / step, g(-step)); };
  auto d1 = central(h);
  if (s.scheme != DiffScheme::Central4) return d1;
  auto d2 = central(0.5 * h);
  return lincomb(4.0 / 3.0, d2, -1.0 / 3.0, d1);
}

// Derivatives along Re z^k and Im z^k.
template <class Fn>
auto real_partials(Fn&& f, const CPoint& z, int k, const StencilSpec& s) {
  auto along = [&](cplx dir) {
    return directional(
        [&](double t) {
          CPoint w = z;
          w[k] += t * dir;
          return f(w);
        },
        s);
  };
  return std::pair{along(1.0), along(kI)};
}

double rss(std::initializer_list<ComplexMat2> ms) {
  double s = 0.0;
  for (const auto& m : ms) s += std::pow(frobenius_norm(m), 2);
  return std::sqrt(s);
}

ComplexMat2 star(const ComplexMat2& m) { return dagger(m); }

StencilSpec fd_only(StencilSpec s) {
  if (s.scheme == DiffScheme::Analytic) s.scheme = DiffScheme::Central2;
  return s;
}

double recorded_step(const StencilSpec& s) { return s.scheme == DiffScheme::Analytic ? 0.0 : s.fd_step; }

}  // namespace

std::string_view to_string(EquationId id) { return kNames.at(static_cast<std::size_t>(id)); }

std::optional<EquationId> equation_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<EquationId>(i);
  return std::nullopt;
}

// ---- ResidualReport ----

void ResidualReport::record(EquationId id, double value, double fd_step) {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.id == id; });
  if (it == entries_.end()) {
    entries_.push_back({id, 0.0, 0.0, 0, fd_step});
    sum_squares_.push_back(0.0);
    it = entries_.end() - 1;
  }
  const auto k = static_cast<std::size_t>(it - entries_.begin());
  it->max_abs = std::max(it->max_abs, std::fabs(value));
  sum_squares_[k] += value * value;
  it->n_samples += 1;
  it->rms = std::sqrt(sum_squares_[k] / static_cast<double>(it->n_samples));
  it->fd_step = fd_step;
}

void ResidualReport::set(const ResidualEntry& e) {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& x) { return x.id == e.id; });
  const double ss = e.rms * e.rms * static_cast<double>(e.n_samples);
  if (it == entries_.end()) {
    entries_.push_back(e);
    sum_squares_.push_back(ss);
  } else {
    *it = e;
    sum_squares_[static_cast<std::size_t>(it - entries_.begin())] = ss;
  }
}

void ResidualReport::merge(const ResidualReport& other) {
  for (std::size_t i = 0; i < other.entries_.size(); ++i) {
    const auto& e = other.entries_[i];
    if (!contains(e.id)) {
      set(e);
      continue;
    }
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& x) { return x.id == e.id; });
    const auto k = static_cast<std::size_t>(it - entries_.begin());
    it->max_abs = std::max(it->max_abs, e.max_abs);
    sum_squares_[k] += other.sum_squares_[i];
    it->n_samples += e.n_samples;
    it->rms = it->n_samples ? std::sqrt(sum_squares_[k] / static_cast<double>(it->n_samples)) : 0.0;
  }
}

bool ResidualReport::contains(EquationId id) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.id == id; });
}

const ResidualEntry& ResidualReport::at(EquationId id) const {
  for (const auto& e : entries_)
    if (e.id == id) return e;
  throw std::out_of_range("no residual entry for " + std::string(to_string(id)));
}

double ResidualReport::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.max_abs);
  return m;
}

// ---- jets ----

FieldSource field_source(const FieldConfig& c) {
  return [c](const CPoint& z) { return eval_fields(c, z); };
}

FieldJet fd_jet(const FieldSource& f, const CPoint& z, const StencilSpec& s) {
  if (!(s.fd_step > 0.0)) throw std::invalid_argument("fd_step must be positive");
  FieldJet j;
  j.value = f(z);
  auto flat = [&](const CPoint& w) { return flatten(f(w)); };
  for (int k = 0; k < 2; ++k) {
    auto [dx, dy] = real_partials(flat, z, k, s);
    j.d[k] = unflatten(lincomb(0.5, dx, -0.5 * kI, dy), z);
    j.dbar[k] = unflatten(lincomb(0.5, dx, 0.5 * kI, dy), z);
  }
  return j;
}

FieldJet analytic_jet(const FieldConfig& c, const CPoint& z) {
  const auto* ab = c.abelian();
  if (!ab) throw std::invalid_argument("analytic derivatives are only available for abelian configurations");
  FieldJet j;
  j.value = eval_fields(c, z);
  for (int k = 0; k < 2; ++k) {
    j.d[k].z = j.dbar[k].z = z;
    for (int b = 0; b < 2; ++b) j.d[k].phi[b] = ab->ddtheta[b][k].eval(z) * ComplexMat2::sigma3();
  }
  return j;
}

FieldJet make_jet(const FieldConfig& c, const CPoint& z, const StencilSpec& s) {
  if (s.scheme == DiffScheme::Analytic) return analytic_jet(c, z);
  return fd_jet(field_source(c), z, s);
}

// ---- system blocks ----

ComplexMat2 curvature_hol_antihol(const FieldJet& j, int a, int b) {
  return j.d[a].a_bar[b] - j.dbar[b].a[a] + commutator(j.value.a[a], j.value.a_bar[b]);
}

ComplexMat2 curvature_hol(const FieldJet& j) {
  return j.d[0].a[1] - j.d[1].a[0] + commutator(j.value.a[0], j.value.a[1]);
}

ComplexMat2 curvature_antihol(const FieldJet& j) {
  return j.dbar[0].a_bar[1] - j.dbar[1].a_bar[0] + commutator(j.value.a_bar[0], j.value.a_bar[1]);
}

ComplexMat2 covariant_d_phi(const FieldJet& j, int a, int b) {
  return j.d[a].phi[b] + commutator(j.value.a[a], j.value.phi[b]);
}

ComplexMat2 covariant_dbar_phi(const FieldJet& j, int a, int b) {
  return j.dbar[a].phi[b] + commutator(j.value.a_bar[a], j.value.phi[b]);
}

ComplexMat2 covariant_d_phi_star(const FieldJet& j, int a, int b) {
  return star(j.dbar[a].phi[b]) + commutator(j.value.a[a], star(j.value.phi[b]));
}

SystemBlocks system_blocks(const FieldJet& j) {
  SystemBlocks out;
  const auto& phi = j.value.phi;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      out.dbar_phi[a][b] = covariant_dbar_phi(j, a, b);
      out.f_plus_comm[a][b] = curvature_hol_antihol(j, a, b) + 0.25 * commutator(phi[a], star(phi[b]));
    }
  out.phi_comm = commutator(phi[0], phi[1]);
  out.f20 = curvature_hol(j);
  out.dphi_skew = covariant_d_phi(j, 0, 1) - covariant_d_phi(j, 1, 0);
  return out;
}

double family_norm(const SystemBlocks& b, EquationId family) {
  switch (family) {
    case EquationId::DbarPhi:
      return rss({b.dbar_phi[0][0], b.dbar_phi[0][1], b.dbar_phi[1][0], b.dbar_phi[1][1]});
    case EquationId::FplusComm:
      return rss({b.f_plus_comm[0][0], b.f_plus_comm[0][1], b.f_plus_comm[1][0], b.f_plus_comm[1][1]});
    case EquationId::PhiPhiComm:
      return frobenius_norm(b.phi_comm);
    case EquationId::F20:
      return frobenius_norm(b.f20);
    case EquationId::DPhiSkew:
      return frobenius_norm(b.dphi_skew);
    default:
      throw std::invalid_argument("not a system family: " + std::string(to_string(family)));
  }
}

double curvature_norm(const FieldJet& j) {
  return 2.0 * std::sqrt(2.0) *
         rss({curvature_hol_antihol(j, 0, 0), curvature_hol_antihol(j, 0, 1),
              curvature_hol_antihol(j, 1, 0), curvature_hol_antihol(j, 1, 1), curvature_hol(j),
              curvature_antihol(j)});
}

ResidualReport residuals_at(const FieldConfig& c, const CPoint& z, const StencilSpec& s) {
  const SystemBlocks b = system_blocks(make_jet(c, z, s));
  ResidualReport r;
  for (EquationId id : kSystemFamilies) r.record(id, family_norm(b, id), recorded_step(s));
  return r;
}

std::vector<CPoint> sample_points(const SampleBox& box, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng()); };
  std::vector<CPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = uniform(box.xmin, box.xmax);
    const double y = uniform(box.ymin, box.ymax);
    CPoint z{cplx{x, 0.0}, cplx{y, 0.0}};
    const auto before = static_cast<long long>(std::floor(static_cast<double>(i) * box.complex_fraction));
    const auto after = static_cast<long long>(std::floor(static_cast<double>(i + 1) * box.complex_fraction));
    if (after > before) {
      z[0] += kI * uniform(-box.imag_extent, box.imag_extent);
      z[1] += kI * uniform(-box.imag_extent, box.imag_extent);
    }
    pts.push_back(z);
  }
  return pts;
}

ResidualReport residuals_sampled(const FieldConfig& c, const SampleBox& box, std::size_t n,
                                 const StencilSpec& s, std::uint64_t seed) {
  ResidualReport r;
  for (const CPoint& z : sample_points(box, n, seed)) r.merge(residuals_at(c, z, s));
  return r;
}

// ---- Lax pair ----

std::vector<LaxCoefficient> lax_coefficients(const FieldJet& j) {
  const auto& phi = j.value.phi;
  std::vector<LaxCoefficient> out;
  out.push_back({0, 0, EquationId::F20, curvature_hol(j)});
  out.push_back({0, 1, EquationId::DPhiSkew,
                 0.5 * (covariant_d_phi(j, 0, 1) - covariant_d_phi(j, 1, 0))});
  out.push_back({0, 2, EquationId::PhiPhiComm, 0.25 * commutator(phi[0], phi[1])});
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const int k = 1 + 2 * a + b;
      out.push_back({k, -1, EquationId::DbarPhi, 0.5 * covariant_d_phi_star(j, a, b)});
      out.push_back({k, 0, EquationId::FplusComm,
                     curvature_hol_antihol(j, a, b) + 0.25 * commutator(phi[a], star(phi[b]))});
      out.push_back({k, 1, EquationId::DbarPhi, -0.5 * covariant_dbar_phi(j, b, a)});
    }
  return out;
}

std::array<ComplexMat2, kLaxCommutators> lax_assemble(const std::vector<LaxCoefficient>& coeffs,
                                                      cplx zeta) {
  std::array<ComplexMat2, kLaxCommutators> out{};
  for (const auto& c : coeffs) out.at(static_cast<std::size_t>(c.commutator)) += std::pow(zeta, c.zeta_power) * c.value;
  return out;
}

std::array<ComplexMat2, kLaxCommutators> lax_curvature(const FieldJet& j, cplx zeta) {
  if (zeta == cplx{}) throw std::invalid_argument("spectral parameter zeta must be nonzero");
  const PointFields& v = j.value;
  const cplx hz = 0.5 * zeta;
  const cplx hzi = 0.5 / zeta;
  // B_a, B_{a-bar} and their derivatives d_c, d_{c-bar}.
  auto b_hol = [&](const PointFields& f, int a) { return f.a[a] + hz * f.phi[a]; };
  auto b_anti = [&](const PointFields& f, int a) { return f.a_bar[a] + hzi * star(f.phi[a]); };
  // d_c(Phi_a^*) = (d_{c-bar} Phi_a)^dagger
  auto d_b_anti = [&](int c, int a) { return j.d[c].a_bar[a] + hzi * star(j.dbar[c].phi[a]); };
  auto dbar_b_hol = [&](int c, int a) { return j.dbar[c].a[a] + hz * j.dbar[c].phi[a]; };
  auto d_b_hol = [&](int c, int a) { return j.d[c].a[a] + hz * j.d[c].phi[a]; };

  std::array<ComplexMat2, kLaxCommutators> out{};
  out[0] = d_b_hol(0, 1) - d_b_hol(1, 0) + commutator(b_hol(v, 0), b_hol(v, 1));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      out[1 + 2 * a + b] = d_b_anti(a, b) - dbar_b_hol(b, a) + commutator(b_hol(v, a), b_anti(v, b));
  return out;
}

namespace {

double rss(const std::array<ComplexMat2, kLaxCommutators>& ms) {
  double s = 0.0;
  for (const auto& m : ms) s += std::pow(frobenius_norm(m), 2);
  return std::sqrt(s);
}

void lax_at(const FieldJet& j, std::span<const cplx> zetas, const StencilSpec& s, LaxReport& rep,
            bool first) {
  const auto coeffs = lax_coefficients(j);
  for (std::size_t i = 0; i < zetas.size(); ++i) {
    const double direct = rss(lax_curvature(j, zetas[i]));
    const double assembled = rss(lax_assemble(coeffs, zetas[i]));
    if (first) {
      rep.per_zeta.push_back({zetas[i], direct, assembled});
    } else {
      rep.per_zeta[i].direct = std::max(rep.per_zeta[i].direct, direct);
      rep.per_zeta[i].assembled = std::max(rep.per_zeta[i].assembled, assembled);
    }
    rep.report.record(EquationId::Lax, direct, recorded_step(s));
  }
}

void check_zetas(std::span<const cplx> zetas) {
  for (cplx z : zetas)
    if (z == cplx{}) throw std::invalid_argument("spectral parameter zeta must be nonzero");
}

}  // namespace

LaxReport lax_check(const FieldConfig& c, const CPoint& z, std::span<const cplx> zetas,
                    const StencilSpec& s) {
  const CPoint pts[] = {z};
  return lax_check_sampled(c, pts, zetas, s);
}

LaxReport lax_check_sampled(const FieldConfig& c, std::span<const CPoint> points,
                            std::span<const cplx> zetas, const StencilSpec& s) {
  check_zetas(zetas);
  LaxReport rep;
  bool first = true;
  for (const CPoint& z : points) {
    lax_at(make_jet(c, z, s), zetas, s, rep, first);
    first = false;
  }
  return rep;
}

// ---- implied systems ----

ImpliedPoint implied_systems_at(const FieldJet& j) {
  const SystemBlocks b = system_blocks(j);
  const auto& d = b.dbar_phi;
  const ComplexMat2 trace_eq = b.f_plus_comm[0][0] + b.f_plus_comm[1][1];
  const double fc_diag = frobenius_norm(b.f_plus_comm[0][0]) + frobenius_norm(b.f_plus_comm[1][1]);
  const double f20 = frobenius_norm(b.f20);
  const double comm = frobenius_norm(b.phi_comm);
  const double dbar = family_norm(b, EquationId::DbarPhi);

  ImpliedPoint p;
  p.simpson = rss({trace_eq, b.f20, b.phi_comm, d[0][0], d[0][1], d[1][0], d[1][1]});
  p.simpson_bound = fc_diag + f20 + comm + dbar;

  // D_2 Phi_2^* = (D_{2-bar} Phi_2)^dagger, D_1 Phi_2^* = (D_{1-bar} Phi_2)^dagger.
  const ComplexMat2 e2 = b.f20 - 0.25 * b.phi_comm;
  const ComplexMat2 e3 = d[0][0] - covariant_d_phi_star(j, 1, 1);
  const ComplexMat2 e4 = d[1][0] + covariant_d_phi_star(j, 0, 1);
  p.kw = rss({trace_eq, e2, e3, e4});
  p.kw_bound = fc_diag + f20 + 0.25 * comm + 2.0 * dbar;
  return p;
}

ImpliedSystemsResult implied_systems_check(const FieldConfig& c, std::span<const CPoint> points,
                                           const StencilSpec& s) {
  ImpliedSystemsResult out;
  for (const CPoint& z : points) {
    const ImpliedPoint p = implied_systems_at(make_jet(c, z, s));
    out.points.push_back(p);
    out.report.record(EquationId::Simpson, p.simpson, recorded_step(s));
    out.report.record(EquationId::KW4, p.kw, recorded_step(s));
  }
  return out;
}

// ---- 8d lift ----

CPoint project_to_c2(const Point8& x) { return {cplx{x[0], x[1]}, cplx{x[4], x[5]}}; }

Potentials8 lift_potentials(const PointFields& f) {
  Potentials8 a{};
  for (int k = 0; k < 2; ++k) {
    const int o = 4 * k;
    a[o + 0] = f.a[k] + f.a_bar[k];
    a[o + 1] = kI * (f.a[k] - f.a_bar[k]);
    a[o + 2] = 0.5 * (f.phi[k] - dagger(f.phi[k]));
    a[o + 3] = (-0.5 * kI) * (f.phi[k] + dagger(f.phi[k]));
  }
  return a;
}

Potentials8 lifted_potentials(const FieldConfig& c, const Point8& x) {
  return lift_potentials(eval_fields(c, project_to_c2(x)));
}

Curvature8 lifted_curvature(const FieldConfig& c, const Point8& x, const StencilSpec& s) {
  const Potentials8 a = lifted_potentials(c, x);
  std::array<Potentials8, 8> da{};  // da[mu] = d_mu A
  if (s.scheme == DiffScheme::Analytic) {
    const FieldJet j = analytic_jet(c, project_to_c2(x));
    for (int k = 0; k < 2; ++k) {
      const Flat6 d = flatten(j.d[k]), db = flatten(j.dbar[k]);
      da[4 * k] = lift_potentials(unflatten(lincomb(1.0, d, 1.0, db), j.value.z));
      da[4 * k + 1] = lift_potentials(unflatten(lincomb(kI, d, -kI, db), j.value.z));
    }
  } else {
    for (int mu = 0; mu < 8; ++mu)
      da[mu] = directional(
          [&](double t) {
            Point8 y = x;
            y[mu] += t;
            return lifted_potentials(c, y);
          },
          s);
  }
  Curvature8 f{};
  for (int mu = 0; mu < 8; ++mu)
    for (int nu = 0; nu < 8; ++nu) f[mu][nu] = da[mu][nu] - da[nu][mu] + commutator(a[mu], a[nu]);
  return f;
}

namespace {

// Index pairs are 1-based as written in the relations.
ComplexMat2 fc(const Curvature8& f, int mu, int nu) { return f[mu - 1][nu - 1]; }

}  // namespace

std::array<ComplexMat2, 7> octonion_relations(const Curvature8& f) {
  constexpr int rows[7][4][2] = {
      {{1, 2}, {3, 4}, {5, 6}, {7, 8}}, {{1, 3}, {4, 2}, {5, 7}, {8, 6}},
      {{1, 4}, {2, 3}, {7, 6}, {8, 5}}, {{1, 5}, {6, 2}, {7, 3}, {4, 8}},
      {{1, 6}, {2, 5}, {3, 8}, {4, 7}}, {{1, 7}, {8, 2}, {3, 5}, {6, 4}},
      {{1, 8}, {2, 7}, {6, 3}, {5, 4}}};
  std::array<ComplexMat2, 7> out{};
  for (int r = 0; r < 7; ++r)
    for (const auto& p : rows[r]) out[r] += fc(f, p[0], p[1]);
  return out;
}

std::array<ComplexMat2, 18> a4_strong_relations(const Curvature8& f) {
  auto sum = [&](int a, int b, int c, int d) { return fc(f, a, b) + fc(f, c, d); };
  auto diff = [&](int a, int b, int c, int d) { return fc(f, a, b) - fc(f, c, d); };
  return {sum(1, 2, 3, 4),  sum(5, 6, 7, 8),  sum(1, 3, 4, 2),  sum(5, 7, 8, 6),
          sum(1, 4, 2, 3),  sum(7, 6, 8, 5),  diff(1, 5, 2, 6), diff(1, 5, 3, 7),
          diff(1, 5, 4, 8), diff(1, 6, 5, 2), diff(1, 6, 8, 3), diff(1, 6, 4, 7),
          diff(1, 7, 2, 8), diff(1, 7, 5, 3), diff(1, 7, 6, 4), diff(1, 8, 7, 2),
          diff(1, 8, 3, 6), diff(1, 8, 5, 4)};
}

LiftResult lift_to_8d_check(const FieldConfig& c, std::span<const Point8> points,
                            const StencilSpec& s) {
  LiftResult out;
  for (const Point8& x : points) {
    const Curvature8 f = lifted_curvature(c, x, s);
    const auto oct = octonion_relations(f);
    const auto a4 = a4_strong_relations(f);
    double oct_max = 0.0, a4_max = 0.0;
    for (std::size_t i = 0; i < oct.size(); ++i) {
      const double v = frobenius_norm(oct[i]);
      out.octonion_max[i] = std::max(out.octonion_max[i], v);
      oct_max = std::max(oct_max, v);
    }
    for (std::size_t i = 0; i < a4.size(); ++i) {
      const double v = frobenius_norm(a4[i]);
      out.a4_max[i] = std::max(out.a4_max[i], v);
      a4_max = std::max(a4_max, v);
    }
    out.report.record(EquationId::Octonion8, oct_max, recorded_step(s));
    out.report.record(EquationId::A4strong8, a4_max, recorded_step(s));
  }
  return out;
}

// ---- holomorphy of G ----

namespace {

using GValues = std::array<cplx, 3>;  // G_11, G_12, G_22
constexpr int kGPairs[3][2] = {{0, 0}, {0, 1}, {1, 1}};

GValues g_values(const PointFields& f) {
  GValues g;
  for (int i = 0; i < 3; ++i) g[i] = (f.phi[kGPairs[i][0]] * f.phi[kGPairs[i][1]]).trace();
  return g;
}

}  // namespace

GHolomorphyResult g_holomorphy_check(const FieldConfig& c, std::span<const CPoint> points,
                                     const StencilSpec& s) {
  GHolomorphyResult out;
  for (const CPoint& z : points) {
    const GValues g = g_values(eval_fields(c, z));
    for (int i = 0; i < 3; ++i)
      out.identity_max_abs = std::max(
          out.identity_max_abs, std::abs(g[i] - expected_g(c, z, kGPairs[i][0], kGPairs[i][1])));

    double dbar_max = 0.0;
    if (s.scheme == DiffScheme::Analytic) {
      const FieldJet j = analytic_jet(c, z);
      for (int a = 0; a < 2; ++a)
        for (int i = 0; i < 3; ++i) {
          const auto [b, cc] = std::pair{kGPairs[i][0], kGPairs[i][1]};
          const cplx v = (j.dbar[a].phi[b] * j.value.phi[cc] + j.value.phi[b] * j.dbar[a].phi[cc]).trace();
          dbar_max = std::max(dbar_max, std::abs(v));
        }
    } else {
      auto gf = [&](const CPoint& w) { return g_values(eval_fields(c, w)); };
      for (int a = 0; a < 2; ++a) {
        auto [dx, dy] = real_partials(gf, z, a, s);
        const GValues db = lincomb(0.5, dx, 0.5 * kI, dy);
        for (cplx v : db) dbar_max = std::max(dbar_max, std::abs(v));
      }
    }
    out.dbar_max_abs = std::max(out.dbar_max_abs, dbar_max);
    out.report.record(EquationId::Gholo, dbar_max, recorded_step(s));
    ++out.n_samples;
  }
  return out;
}

// ---- gauge transformations ----

namespace {

std::array<double, 4> real_coords(const CPoint& z) {
  return {z[0].real(), z[0].imag(), z[1].real(), z[1].imag()};
}

}  // namespace

GaugeTransform GaugeTransform::constant(const SU2Element& g) {
  GaugeTransform t;
  t.base = g;
  return t;
}

GaugeTransform GaugeTransform::position_dependent(std::uint64_t seed, double strength) {
  std::mt19937_64 rng(seed);
  auto u = [&] { return unit_uniform(rng()); };
  GaugeTransform t;
  t.base = random_su2(rng());
  // Unit vector n on S^2; X = i n.sigma squares to -1.
  const double cz = 2.0 * u() - 1.0;
  const double ph = 2.0 * std::acos(-1.0) * u();
  const double sz = std::sqrt(1.0 - cz * cz);
  t.generator = kI * (sz * std::cos(ph) * ComplexMat2::sigma1() + sz * std::sin(ph) * ComplexMat2::sigma2() +
                      cz * ComplexMat2::sigma3());
  for (auto& l : t.linear) l = strength * (2.0 * u() - 1.0);
  for (int i = 0; i < 4; ++i)
    for (int k = i; k < 4; ++k) t.quadratic[i][k] = t.quadratic[k][i] = strength * (2.0 * u() - 1.0);
  return t;
}

double GaugeTransform::f(const CPoint& z) const {
  const auto x = real_coords(z);
  double v = 0.0;
  for (int i = 0; i < 4; ++i) {
    v += linear[i] * x[i];
    for (int k = 0; k < 4; ++k) v += 0.5 * quadratic[i][k] * x[i] * x[k];
  }
  return v;
}

namespace {

std::array<double, 4> gradient(const GaugeTransform& g, const CPoint& z) {
  const auto x = real_coords(z);
  std::array<double, 4> grad = g.linear;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) grad[i] += g.quadratic[i][k] * x[k];
  return grad;
}

}  // namespace

std::array<cplx, 2> GaugeTransform::df(const CPoint& z) const {
  const auto g = gradient(*this, z);
  return {0.5 * cplx{g[0], -g[1]}, 0.5 * cplx{g[2], -g[3]}};
}

std::array<cplx, 2> GaugeTransform::dbar_f(const CPoint& z) const {
  const auto g = gradient(*this, z);
  return {0.5 * cplx{g[0], g[1]}, 0.5 * cplx{g[2], g[3]}};
}

cplx GaugeTransform::d2f(bool hol_u, int u, bool hol_v, int v) const {
  // d/dz^k = (e_{2k} - i e_{2k+1}) / 2 in the real coordinates; f has constant Hessian.
  auto vec = [](bool hol, int k) {
    std::array<cplx, 4> w{};
    w[2 * k] = 0.5;
    w[2 * k + 1] = hol ? cplx{0.0, -0.5} : cplx{0.0, 0.5};
    return w;
  };
  const auto a = vec(hol_u, u), b = vec(hol_v, v);
  cplx out{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) out += a[i] * quadratic[i][k] * b[k];
  return out;
}

ComplexMat2 GaugeTransform::at(const CPoint& z) const {
  return base.matrix() * exp_unit_generator(generator, f(z));
}

PointFields apply_gauge(const GaugeTransform& g, const PointFields& f) {
  const ComplexMat2 l = g.at(f.z);
  const ComplexMat2 li = dagger(l);
  const auto df = g.df(f.z);
  const auto dbf = g.dbar_f(f.z);
  PointFields out;
  out.z = f.z;
  for (int a = 0; a < 2; ++a) {
    out.phi[a] = li * f.phi[a] * l;
    out.a_bar[a] = li * f.a_bar[a] * l + dbf[a] * g.generator;
    out.a[a] = li * f.a[a] * l + df[a] * g.generator;
  }
  return out;
}

FieldJet apply_gauge(const GaugeTransform& g, const FieldJet& j) {
  const PointFields v = apply_gauge(g, j.value);
  const ComplexMat2 l = g.at(j.value.z);
  const ComplexMat2 li = dagger(l);
  const ComplexMat2& x = g.generator;
  const auto df = g.df(j.value.z);
  const auto dbf = g.dbar_f(j.value.z);
  FieldJet out;
  out.value = v;
  // d(L^-1 M L) = L^-1 dM L + (df) [L^-1 M L, X]
  auto transport = [&](const PointFields& dm, cplx dfc, bool hol, int c) {
    PointFields o;
    o.z = j.value.z;
    for (int b = 0; b < 2; ++b) {
      o.phi[b] = li * dm.phi[b] * l + dfc * commutator(v.phi[b], x);
      o.a_bar[b] = li * dm.a_bar[b] * l + dfc * commutator(li * j.value.a_bar[b] * l, x) +
                   g.d2f(hol, c, false, b) * x;
      o.a[b] = li * dm.a[b] * l + dfc * commutator(li * j.value.a[b] * l, x) + g.d2f(hol, c, true, b) * x;
    }
    return o;
  };
  for (int c = 0; c < 2; ++c) {
    out.d[c] = transport(j.d[c], df[c], true, c);
    out.dbar[c] = transport(j.dbar[c], dbf[c], false, c);
  }
  return out;
}

FieldSource gauge_transformed(const FieldSource& f, const GaugeTransform& g) {
  return [f, g](const CPoint& z) { return apply_gauge(g, f(z)); };
}

namespace {

GaugeDeltas deltas(const FieldJet& j0, const FieldJet& j1) {
  const SystemBlocks b0 = system_blocks(j0), b1 = system_blocks(j1);
  GaugeDeltas out;
  for (std::size_t i = 0; i < kSystemFamilies.size(); ++i) {
    out.family_delta[i] = std::fabs(family_norm(b1, kSystemFamilies[i]) - family_norm(b0, kSystemFamilies[i]));
    out.max_delta = std::max(out.max_delta, out.family_delta[i]);
  }
  out.field_norm_delta = std::fabs(curvature_norm(j1) - curvature_norm(j0));
  out.max_delta = std::max(out.max_delta, out.field_norm_delta);
  return out;
}

}  // namespace

GaugeInvarianceResult gauge_invariance_check(const FieldConfig& c, const GaugeTransform& g,
                                             const CPoint& z, const StencilSpec& s) {
  const StencilSpec fd = fd_only(s);
  const FieldSource base = field_source(c);
  const FieldJet j0 = fd_jet(base, z, fd);
  return {deltas(j0, fd_jet(gauge_transformed(base, g), z, fd)), deltas(j0, apply_gauge(g, j0))};
}

GaugeInvarianceResult gauge_invariance_check(const FieldConfig& c, std::uint64_t seed,
                                             const CPoint& z, const StencilSpec& s) {
  return gauge_invariance_check(c, GaugeTransform::position_dependent(seed), z, s);
}

}  // namespace ymh
