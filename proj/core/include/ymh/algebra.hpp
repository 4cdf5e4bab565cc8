#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace ymh {

using cplx = std::complex<double>;

/// A point of C^2, (z^1, z^2).
using CPoint = std::array<cplx, 2>;

/// Dense 2x2 complex matrix. Holds su(2)/sl(2,C) values of potentials,
/// Higgs fields and curvature components.
struct ComplexMat2 {
  cplx e11{}, e12{}, e21{}, e22{};

  static constexpr ComplexMat2 zero() { return {}; }
  static constexpr ComplexMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  /// diag(1, -1)
  static constexpr ComplexMat2 sigma3() { return {1.0, 0.0, 0.0, -1.0}; }
  static constexpr ComplexMat2 sigma1() { return {0.0, 1.0, 1.0, 0.0}; }
  static constexpr ComplexMat2 sigma2() {
    return {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0};
  }

  constexpr cplx trace() const { return e11 + e22; }
  constexpr cplx det() const { return e11 * e22 - e12 * e21; }

  constexpr ComplexMat2& operator+=(const ComplexMat2& o) {
    e11 += o.e11; e12 += o.e12; e21 += o.e21; e22 += o.e22;
    return *this;
  }
  constexpr ComplexMat2& operator-=(const ComplexMat2& o) {
    e11 -= o.e11; e12 -= o.e12; e21 -= o.e21; e22 -= o.e22;
    return *this;
  }
  constexpr ComplexMat2& operator*=(cplx s) {
    e11 *= s; e12 *= s; e21 *= s; e22 *= s;
    return *this;
  }

  friend constexpr bool operator==(const ComplexMat2&, const ComplexMat2&) = default;
};

constexpr ComplexMat2 operator+(ComplexMat2 a, const ComplexMat2& b) { return a += b; }
constexpr ComplexMat2 operator-(ComplexMat2 a, const ComplexMat2& b) { return a -= b; }
constexpr ComplexMat2 operator-(const ComplexMat2& a) { return {-a.e11, -a.e12, -a.e21, -a.e22}; }
constexpr ComplexMat2 operator*(ComplexMat2 a, cplx s) { return a *= s; }
constexpr ComplexMat2 operator*(cplx s, ComplexMat2 a) { return a *= s; }
constexpr ComplexMat2 operator*(ComplexMat2 a, double s) { return a *= cplx{s}; }
constexpr ComplexMat2 operator*(double s, ComplexMat2 a) { return a *= cplx{s}; }

constexpr ComplexMat2 operator*(const ComplexMat2& a, const ComplexMat2& b) {
  return {a.e11 * b.e11 + a.e12 * b.e21, a.e11 * b.e12 + a.e12 * b.e22,
          a.e21 * b.e11 + a.e22 * b.e21, a.e21 * b.e12 + a.e22 * b.e22};
}

/// xy - yx
constexpr ComplexMat2 commutator(const ComplexMat2& x, const ComplexMat2& y) {
  return x * y - y * x;
}

/// Conjugate transpose.
constexpr ComplexMat2 dagger(const ComplexMat2& x) {
  return {std::conj(x.e11), std::conj(x.e21), std::conj(x.e12), std::conj(x.e22)};
}

double frobenius_norm(const ComplexMat2& x);

/// Element of SU(2). Construct through from_quaternion() or random_su2();
/// the invariants m m^dagger = 1 and det m = 1 hold up to rounding.
class SU2Element {
 public:
  SU2Element() = default;

  /// q = (w, x, y, z) is normalised before use; maps to w + x*i*s1 + y*i*s2 + z*i*s3.
  static SU2Element from_quaternion(double w, double x, double y, double z);

  const ComplexMat2& matrix() const { return m_; }
  /// Inverse equals the conjugate transpose.
  ComplexMat2 inverse() const { return dagger(m_); }

  /// Lambda^{-1} X Lambda.
  ComplexMat2 conjugate(const ComplexMat2& x) const { return inverse() * x * m_; }

 private:
  explicit SU2Element(const ComplexMat2& m) : m_(m) {}
  ComplexMat2 m_ = ComplexMat2::identity();
};

/// Deterministic Haar-distributed SU(2) element. The generator is
/// std::mt19937_64 seeded with `seed`; three raw 64-bit draws are turned
/// into uniforms on [0,1) by keeping the top 53 bits, then mapped to a unit
/// quaternion with Shoemake's construction.
SU2Element random_su2(std::uint64_t seed);

/// Uniform double on [0,1) from one raw 64-bit draw (top 53 bits).
double unit_uniform(std::uint64_t bits);

/// exp(t X) for X with X^2 = -1 (a unit su(2) generator i n.sigma).
ComplexMat2 exp_unit_generator(const ComplexMat2& x, double t);

}  // namespace ymh
