#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ymh/algebra.hpp"
#include "ymh/fields.hpp"

namespace ymh {

/// Residual families checked by the verifier.
enum class EquationId {
  DbarPhi,     ///< D_{a-bar} Phi_b
  FplusComm,   ///< F_{a b-bar} + 1/4 [Phi_a, Phi_b^*]
  PhiPhiComm,  ///< [Phi_1, Phi_2]
  F20,         ///< F_{12}
  DPhiSkew,    ///< D_1 Phi_2 - D_2 Phi_1
  Lax,         ///< zeta-curvature of the Lax connection
  Simpson,     ///< 4d implied Simpson system
  KW4,         ///< 4d implied Kapustin-Witten system
  Octonion8,   ///< 8d octonionic instanton relations
  A4strong8,   ///< 8d A4-strong relations
  Gholo,       ///< d-bar of G_ab = tr(Phi_a Phi_b)
};

std::string_view to_string(EquationId id);
std::optional<EquationId> equation_from_string(std::string_view name);

/// The five families of the 4-complex-dimensional system.
inline constexpr std::array<EquationId, 5> kSystemFamilies{
    EquationId::DbarPhi, EquationId::FplusComm, EquationId::PhiPhiComm, EquationId::F20,
    EquationId::DPhiSkew};

enum class DiffScheme {
  Central2,  ///< second-order central differences at step h
  Central4,  ///< Richardson combination of central differences at h and h/2
  Analytic,  ///< exact derivatives; abelian configurations only
};

struct StencilSpec {
  double fd_step = 1e-3;
  DiffScheme scheme = DiffScheme::Central2;
};

struct ResidualEntry {
  EquationId id = EquationId::DbarPhi;
  double max_abs = 0.0;
  double rms = 0.0;
  std::size_t n_samples = 0;
  double fd_step = 0.0;  ///< 0 for analytic derivatives

  friend bool operator==(const ResidualEntry&, const ResidualEntry&) = default;
};

/// Per-equation aggregate of residual norms, in insertion order.
class ResidualReport {
 public:
  /// Add one sample of the residual norm for `id`.
  void record(EquationId id, double value, double fd_step);
  /// Insert an already aggregated entry (replaces an existing one).
  void set(const ResidualEntry& e);
  void merge(const ResidualReport& other);

  bool contains(EquationId id) const;
  /// Throws std::out_of_range when absent.
  const ResidualEntry& at(EquationId id) const;
  const std::vector<ResidualEntry>& entries() const { return entries_; }
  double max_abs() const;

  friend bool operator==(const ResidualReport& a, const ResidualReport& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<ResidualEntry> entries_;
  std::vector<double> sum_squares_;
};

/// Wirtinger 1-jet of the fields: d[a] = d/dz^a, dbar[a] = d/dz-bar^a of every component.
struct FieldJet {
  PointFields value;
  std::array<PointFields, 2> d;
  std::array<PointFields, 2> dbar;
};

using FieldSource = std::function<PointFields(const CPoint&)>;

FieldSource field_source(const FieldConfig& c);
/// Finite-difference jet in the real coordinates (Re z^a, Im z^a).
FieldJet fd_jet(const FieldSource& f, const CPoint& z, const StencilSpec& s);
/// Exact jet; throws std::invalid_argument for non-abelian configurations.
FieldJet analytic_jet(const FieldConfig& c, const CPoint& z);
/// Dispatch on s.scheme.
FieldJet make_jet(const FieldConfig& c, const CPoint& z, const StencilSpec& s);

/// Matrix-valued blocks of the 4-complex-dimensional system. Indices are [a][b].
struct SystemBlocks {
  std::array<std::array<ComplexMat2, 2>, 2> dbar_phi;     ///< D_{a-bar} Phi_b
  std::array<std::array<ComplexMat2, 2>, 2> f_plus_comm;  ///< F_{a b-bar} + 1/4 [Phi_a, Phi_b^*]
  ComplexMat2 phi_comm;                                   ///< [Phi_1, Phi_2]
  ComplexMat2 f20;                                        ///< F_{12}
  ComplexMat2 dphi_skew;                                  ///< D_1 Phi_2 - D_2 Phi_1
};

/// Curvature components from a jet.
ComplexMat2 curvature_hol_antihol(const FieldJet& j, int a, int b);  ///< F_{a b-bar}
ComplexMat2 curvature_hol(const FieldJet& j);                        ///< F_{12}
ComplexMat2 curvature_antihol(const FieldJet& j);                    ///< F_{1-bar 2-bar}
/// D_a Phi_b
ComplexMat2 covariant_d_phi(const FieldJet& j, int a, int b);
/// D_{a-bar} Phi_b
ComplexMat2 covariant_dbar_phi(const FieldJet& j, int a, int b);
/// D_a (Phi_b^*) = (D_{a-bar} Phi_b)^dagger
ComplexMat2 covariant_d_phi_star(const FieldJet& j, int a, int b);

SystemBlocks system_blocks(const FieldJet& j);
/// Root-sum-square of the Frobenius norms of the blocks in one family.
double family_norm(const SystemBlocks& b, EquationId family);

/// |F| from finite-difference curvature: 2 sqrt(2) times the root-sum-square of
/// the complex components F_{a b-bar}, F_{12}, F_{1-bar 2-bar}.
double curvature_norm(const FieldJet& j);

/// Residuals of the five families at one point.
ResidualReport residuals_at(const FieldConfig& c, const CPoint& z, const StencilSpec& s = {});

/// Sampling region. Re z^1 is uniform on [xmin, xmax] and Re z^2 on
/// [ymin, ymax]; a fraction `complex_fraction` of samples also receive
/// imaginary parts uniform on [-imag_extent, imag_extent].
struct SampleBox {
  double xmin = -3.0, xmax = 3.0;
  double ymin = -3.0, ymax = 3.0;
  double imag_extent = 0.5;
  double complex_fraction = 0.2;
};

/// Deterministic sample points from std::mt19937_64(seed).
std::vector<CPoint> sample_points(const SampleBox& box, std::size_t n, std::uint64_t seed);

ResidualReport residuals_sampled(const FieldConfig& c, const SampleBox& box, std::size_t n,
                                 const StencilSpec& s = {}, std::uint64_t seed = 1);

// Lax pair: B_a = A_a + zeta/2 Phi_a, B_{a-bar} = A_{a-bar} + 1/(2 zeta) Phi_a^*.

/// One zeta-power coefficient of one commutator.
/// commutator 0 is [d_1, d_2]; commutator 1 + 2a + b is [d_a, d_{b-bar}].
struct LaxCoefficient {
  int commutator = 0;
  int zeta_power = 0;
  EquationId family = EquationId::F20;
  ComplexMat2 value;
};

inline constexpr int kLaxCommutators = 5;

/// All coefficients, each tagged with the system family it reproduces.
std::vector<LaxCoefficient> lax_coefficients(const FieldJet& j);
/// Sum of coefficients at a given zeta.
std::array<ComplexMat2, kLaxCommutators> lax_assemble(const std::vector<LaxCoefficient>& coeffs,
                                                      cplx zeta);
/// Curvature of the Lax connection computed directly from B and its jet.
std::array<ComplexMat2, kLaxCommutators> lax_curvature(const FieldJet& j, cplx zeta);

struct LaxZetaResult {
  cplx zeta;
  double direct = 0.0;     ///< root-sum-square of the direct curvature
  double assembled = 0.0;  ///< same from the coefficient expansion
};

struct LaxReport {
  std::vector<LaxZetaResult> per_zeta;
  ResidualReport report;  ///< Lax entry over all zetas
};

/// Throws std::invalid_argument if a zeta is 0.
LaxReport lax_check(const FieldConfig& c, const CPoint& z, std::span<const cplx> zetas,
                    const StencilSpec& s = {});
LaxReport lax_check_sampled(const FieldConfig& c, std::span<const CPoint> points,
                            std::span<const cplx> zetas, const StencilSpec& s = {});

/// Implied 4d systems on the slice (z^1, z^2) = (x1 + i x2, x5 + i x6).
struct ImpliedPoint {
  double simpson = 0.0;
  double simpson_bound = 0.0;
  double kw = 0.0;
  double kw_bound = 0.0;
};

ImpliedPoint implied_systems_at(const FieldJet& j);

struct ImpliedSystemsResult {
  ResidualReport report;  ///< Simpson and KW4
  std::vector<ImpliedPoint> points;
};

ImpliedSystemsResult implied_systems_check(const FieldConfig& c, std::span<const CPoint> points,
                                           const StencilSpec& s = {});

/// Real coordinates x1..x8 (index 0..7).
using Point8 = std::array<double, 8>;
using Potentials8 = std::array<ComplexMat2, 8>;
using Curvature8 = std::array<std::array<ComplexMat2, 8>, 8>;

/// (x1 + i x2, x5 + i x6); x3, x4, x7, x8 are ignored.
CPoint project_to_c2(const Point8& x);
/// Real su(2) potentials A_1..A_8 with Phi_1 = A_3 + i A_4, Phi_2 = A_7 + i A_8.
Potentials8 lift_potentials(const PointFields& f);
/// Potentials of the lifted configuration at an 8d point.
Potentials8 lifted_potentials(const FieldConfig& c, const Point8& x);
/// F_{mu nu} of the lifted configuration by finite differences in all eight coordinates.
Curvature8 lifted_curvature(const FieldConfig& c, const Point8& x, const StencilSpec& s);

std::array<ComplexMat2, 7> octonion_relations(const Curvature8& f);
std::array<ComplexMat2, 18> a4_strong_relations(const Curvature8& f);

struct LiftResult {
  ResidualReport report;  ///< Octonion8 and A4strong8
  std::array<double, 7> octonion_max{};
  std::array<double, 18> a4_max{};
};

LiftResult lift_to_8d_check(const FieldConfig& c, std::span<const Point8> points,
                            const StencilSpec& s = {});

struct GHolomorphyResult {
  ResidualReport report;          ///< Gholo: max |d-bar G_ab|
  double identity_max_abs = 0.0;  ///< max |tr(Phi_a Phi_b) - expected_g|
  double dbar_max_abs = 0.0;
  std::size_t n_samples = 0;
};

/// Default stencil is fourth order; second order at h = 1e-3 leaves O(h^2)
/// truncation comparable to the tolerance on steep polynomials.
GHolomorphyResult g_holomorphy_check(const FieldConfig& c, std::span<const CPoint> points,
                                     const StencilSpec& s = {1e-3, DiffScheme::Central4});

/// Lambda(z) = Lambda0 exp(f X) with X^2 = -1 and f a real quadratic in
/// (x1, x2, x5, x6).
struct GaugeTransform {
  SU2Element base;
  ComplexMat2 generator = {cplx{0.0, 1.0}, 0.0, 0.0, cplx{0.0, -1.0}};
  std::array<double, 4> linear{};
  std::array<std::array<double, 4>, 4> quadratic{};  ///< f includes 1/2 x^T Q x

  static GaugeTransform constant(const SU2Element& g);
  /// Random base, random unit generator and random f coefficients of size `strength`.
  static GaugeTransform position_dependent(std::uint64_t seed, double strength = 0.3);

  double f(const CPoint& z) const;
  /// (df/dz^a, df/dz-bar^a)
  std::array<cplx, 2> df(const CPoint& z) const;
  std::array<cplx, 2> dbar_f(const CPoint& z) const;
  /// Second Wirtinger derivatives; hol_u/hol_v select d/dz^u or d/dz-bar^u.
  cplx d2f(bool hol_u, int u, bool hol_v, int v) const;
  ComplexMat2 at(const CPoint& z) const;
};

/// Phi' = L^-1 Phi L, A' = L^-1 A L + L^-1 dL.
PointFields apply_gauge(const GaugeTransform& g, const PointFields& f);
/// Exact transformation of a jet, using the analytic derivatives of L.
FieldJet apply_gauge(const GaugeTransform& g, const FieldJet& j);
FieldSource gauge_transformed(const FieldSource& f, const GaugeTransform& g);

struct GaugeDeltas {
  std::array<double, 5> family_delta{};  ///< |norm' - norm| per system family
  double field_norm_delta = 0.0;         ///< same for the finite-difference |F|
  double max_delta = 0.0;
};

/// `recomputed` differentiates the transformed fields afresh, so it carries
/// finite-difference roundoff of order eps |fields| / h. `transported` maps
/// the original jet through the exact transformation law and isolates the
/// covariance of the equations from that roundoff.
struct GaugeInvarianceResult {
  GaugeDeltas recomputed;
  GaugeDeltas transported;
};

/// Compares residual norms and |F| before and after the transform at `z`.
/// Finite differences are used on both sides (Analytic is mapped to Central2).
GaugeInvarianceResult gauge_invariance_check(const FieldConfig& c, const GaugeTransform& g,
                                             const CPoint& z, const StencilSpec& s = {});
/// Uses GaugeTransform::position_dependent(seed).
GaugeInvarianceResult gauge_invariance_check(const FieldConfig& c, std::uint64_t seed,
                                             const CPoint& z, const StencilSpec& s = {});

}  // namespace ymh
