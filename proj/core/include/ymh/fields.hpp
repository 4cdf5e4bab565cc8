#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>

#include "ymh/algebra.hpp"
#include "ymh/painleve.hpp"
#include "ymh/polynomial.hpp"

namespace ymh {

/// Field values at one point of C^2. Indices a = 0, 1 refer to z^1, z^2.
///
///   phi[a]   : Higgs field Phi_a (sl(2,C))
///   a_bar[a] : (0,1) potential component A_{a-bar}
///   a[a]     : (1,0) component A_a = -(A_{a-bar})^dagger
struct PointFields {
  CPoint z{};
  std::array<ComplexMat2, 2> phi{};
  std::array<ComplexMat2, 2> a_bar{};
  std::array<ComplexMat2, 2> a{};
};

/// Phi = d(theta) sigma_3, A = 0.
struct AbelianData {
  Polynomial theta;
  std::array<Polynomial, 2> dtheta;
  std::array<std::array<Polynomial, 2>, 2> ddtheta;
};

/// Diagonal-gauge ansatz driven by P and the radial transcendent psi(|P|).
struct PolyAnsatzData {
  Polynomial p;
  std::array<Polynomial, 2> dp;
  std::shared_ptr<const TranscendentTable> table;
};

class DegeneratePolynomial : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An explicit solution configuration; immutable, cheap to copy (the
/// transcendent table is shared).
class FieldConfig {
 public:
  bool is_abelian() const { return std::holds_alternative<AbelianData>(data_); }
  const AbelianData* abelian() const { return std::get_if<AbelianData>(&data_); }
  const PolyAnsatzData* poly_ansatz() const { return std::get_if<PolyAnsatzData>(&data_); }
  const std::string& description() const { return description_; }

 private:
  FieldConfig(std::variant<AbelianData, PolyAnsatzData> data, std::string description)
      : data_(std::move(data)), description_(std::move(description)) {}

  friend FieldConfig build_abelian(const Polynomial&);
  friend FieldConfig build_poly_ansatz(const Polynomial&, std::shared_ptr<const TranscendentTable>);
  friend FieldConfig embed_one_lump(cplx, cplx, std::shared_ptr<const TranscendentTable>);

  std::variant<AbelianData, PolyAnsatzData> data_;
  std::string description_;
};

/// General abelian solution from a holomorphic polynomial theta.
FieldConfig build_abelian(const Polynomial& theta);

/// Phi_a = (d_a P) [[0, P e^{psi/2}], [e^{-psi/2}, 0]],
/// A_{a-bar} = -1/4 (d_{a-bar} psi) sigma_3, with psi = psi(|P|) from `table`.
/// Throws DegeneratePolynomial when degree(P) < 1.
FieldConfig build_poly_ansatz(const Polynomial& p, std::shared_ptr<const TranscendentTable> table);

/// One-lump solution on C embedded along z = alpha z^1 + beta z^2.
/// Uses the ansatz with linear P; the theta = z^{3/2} normalisation corresponds
/// to P = (3/2)^{2/3} z.
FieldConfig embed_one_lump(cplx alpha, cplx beta, std::shared_ptr<const TranscendentTable> table);

PointFields eval_fields(const FieldConfig& c, const CPoint& z);

/// |F| = |e^{-psi} - |P|^2 e^{psi}| (|d_1 P|^2 + |d_2 P|^2) for the ansatz, 0 for abelian.
double gauge_field_norm(const FieldConfig& c, const CPoint& z);

/// The holomorphic function G_ab = tr(Phi_a Phi_b) predicted by the construction:
/// 2 (d_a theta)(d_b theta) for abelian, 2 P (d_a P)(d_b P) for the ansatz.
cplx expected_g(const FieldConfig& c, const CPoint& z, int a, int b);

}  // namespace ymh
