#include "ymh/fields.hpp"

#include <cmath>
#include <sstream>

namespace ymh {

namespace {

void require_two_variables(const Polynomial& p) {
  if (p.nvars() != 2) throw std::invalid_argument("field constructions need polynomials in z1, z2");
}

}  // namespace

FieldConfig build_abelian(const Polynomial& theta) {
  require_two_variables(theta);
  const Polynomial d1 = theta.partial(0), d2 = theta.partial(1);
  AbelianData d{theta,
                {d1, d2},
                {{{d1.partial(0), d1.partial(1)}, {d2.partial(0), d2.partial(1)}}}};
  return FieldConfig(std::move(d), "abelian: Phi = d(theta) sigma3, A = 0, theta = " +
                                       theta.to_string());
}

FieldConfig build_poly_ansatz(const Polynomial& p, std::shared_ptr<const TranscendentTable> table) {
  require_two_variables(p);
  if (p.degree() < 1)
    throw DegeneratePolynomial("polynomial ansatz needs degree(P) >= 1, got " +
                               std::to_string(p.degree()));
  if (!table) throw std::invalid_argument("polynomial ansatz needs a transcendent table");
  PolyAnsatzData d{p, {p.partial(0), p.partial(1)}, std::move(table)};
  return FieldConfig(std::move(d), "polynomial ansatz: theta = (2/3) P^(3/2), P = " + p.to_string());
}

FieldConfig embed_one_lump(cplx alpha, cplx beta, std::shared_ptr<const TranscendentTable> table) {
  if (alpha == cplx{} && beta == cplx{})
    throw std::invalid_argument("one-lump embedding needs a nonzero direction (alpha, beta)");
  const Polynomial p = Polynomial::variable(0) * alpha + Polynomial::variable(1) * beta;
  FieldConfig c = build_poly_ansatz(p, std::move(table));
  std::ostringstream os;
  os << "one-lump embedding along z = " << alpha << "*z1 + " << beta
     << "*z2; P = z (theta = z^(3/2) corresponds to P = (3/2)^(2/3) z)";
  c.description_ = os.str();
  return c;
}

PointFields eval_fields(const FieldConfig& c, const CPoint& z) {
  PointFields out;
  out.z = z;
  if (const auto* ab = c.abelian()) {
    for (int a = 0; a < 2; ++a) out.phi[a] = ab->dtheta[a].eval(z) * ComplexMat2::sigma3();
    return out;
  }
  const auto& pa = *c.poly_ansatz();
  const TranscendentTable& tab = *pa.table;
  const cplx p = pa.p.eval(z);
  const std::array<cplx, 2> g{pa.dp[0].eval(z), pa.dp[1].eval(z)};
  const double r = std::abs(p);
  const PsiSample s = tab.sample(r);
  // psi'(r)/r is even in r and finite at P = 0.
  const double q = r < tab.r_nodes()[1] ? tab.dpsi_over_r(r) : s.dpsi / r;
  const double e = std::exp(0.5 * s.psi);
  const ComplexMat2 m{0.0, p * e, 1.0 / e, 0.0};
  for (int a = 0; a < 2; ++a) {
    out.phi[a] = g[a] * m;
    const cplx dbar_psi = 0.5 * q * p * std::conj(g[a]);
    out.a_bar[a] = (-0.25 * dbar_psi) * ComplexMat2::sigma3();
    out.a[a] = -dagger(out.a_bar[a]);
  }
  return out;
}

double gauge_field_norm(const FieldConfig& c, const CPoint& z) {
  const auto* pa = c.poly_ansatz();
  if (!pa) return 0.0;
  const cplx p = pa->p.eval(z);
  const double r = std::abs(p);
  const double psi = pa->table->sample(r).psi;
  // For r > 1 write e^{-psi} - r^2 e^{psi} = -2 r sinh(psi + log r) to keep
  // precision in the far field where both terms approach r.
  const double profile = r <= 1.0 ? std::fabs(std::exp(-psi) - r * r * std::exp(psi))
                                  : 2.0 * r * std::fabs(std::sinh(psi + std::log(r)));
  return profile * (std::norm(pa->dp[0].eval(z)) + std::norm(pa->dp[1].eval(z)));
}

cplx expected_g(const FieldConfig& c, const CPoint& z, int a, int b) {
  if (const auto* ab = c.abelian()) return 2.0 * ab->dtheta[a].eval(z) * ab->dtheta[b].eval(z);
  const auto& pa = *c.poly_ansatz();
  return 2.0 * pa.p.eval(z) * pa.dp[a].eval(z) * pa.dp[b].eval(z);
}

}  // namespace ymh
