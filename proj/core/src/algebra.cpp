#include "ymh/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ymh {

double frobenius_norm(const ComplexMat2& x) {
  const double s = std::max({std::abs(x.e11), std::abs(x.e12), std::abs(x.e21), std::abs(x.e22)});
  if (s == 0.0 || !std::isfinite(s)) return s;
  const ComplexMat2 y = x * (1.0 / s);
  return s * std::sqrt(std::norm(y.e11) + std::norm(y.e12) + std::norm(y.e21) + std::norm(y.e22));
}

SU2Element SU2Element::from_quaternion(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  w /= n; x /= n; y /= n; z /= n;
  // w + x i s1 + y i s2 + z i s3
  return SU2Element(ComplexMat2{cplx{w, z}, cplx{y, x}, cplx{-y, x}, cplx{w, -z}});
}

double unit_uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

SU2Element random_su2(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const double u1 = unit_uniform(gen());
  const double u2 = unit_uniform(gen());
  const double u3 = unit_uniform(gen());
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  return SU2Element::from_quaternion(b * std::cos(two_pi * u3), a * std::sin(two_pi * u2),
                                     a * std::cos(two_pi * u2), b * std::sin(two_pi * u3));
}

ComplexMat2 exp_unit_generator(const ComplexMat2& x, double t) {
  return std::cos(t) * ComplexMat2::identity() + std::sin(t) * x;
}

}  // namespace ymh
