#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ymh/algebra.hpp"

using namespace ymh;

namespace {

double dist(const ComplexMat2& a, const ComplexMat2& b) { return frobenius_norm(a - b); }

const cplx I{0.0, 1.0};

}  // namespace

TEST_CASE("commutator of sigma3 with itself vanishes") {
  CHECK(commutator(ComplexMat2::sigma3(), ComplexMat2::sigma3()) == ComplexMat2::zero());
}

TEST_CASE("commutator with a raising matrix") {
  const ComplexMat2 e{0.0, 1.0, 0.0, 0.0};
  CHECK(commutator(ComplexMat2::sigma3(), e) == ComplexMat2{0.0, 2.0, 0.0, 0.0});
}

TEST_CASE("Pauli products") {
  CHECK(dist(ComplexMat2::sigma1() * ComplexMat2::sigma2(), I * ComplexMat2::sigma3()) == 0.0);
  CHECK(ComplexMat2::sigma3() * ComplexMat2::sigma3() == ComplexMat2::identity());
  CHECK(ComplexMat2::sigma3().trace() == cplx{});
}

TEST_CASE("commutators are traceless and antisymmetric") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto x = oracle::random_matrix(rng), y = oracle::random_matrix(rng), z = oracle::random_matrix(rng);
    CHECK(std::abs(commutator(x, y).trace()) < 1e-14);
    CHECK(dist(commutator(x, y), -commutator(y, x)) < 1e-15);
    const auto jacobi = commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) +
                        commutator(z, commutator(x, y));
    CHECK(frobenius_norm(jacobi) < 1e-13);
  }
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 200; ++k) {
    const auto x = oracle::random_matrix(rng), y = oracle::random_matrix(rng), z = oracle::random_matrix(rng);
    const auto lhs = (x * y) * z, rhs = x * (y * z);
    CHECK(dist(lhs, rhs) <= 1e-12 * frobenius_norm(lhs));
    CHECK(dist(x * (y + z), x * y + x * z) < 1e-14);
    CHECK(dist(2.5 * (x + y), 2.5 * x + 2.5 * y) < 1e-14);
  }
}

TEST_CASE("dagger") {
  CHECK(dagger(ComplexMat2::identity()) == ComplexMat2::identity());
  const double u = 3.0;
  CHECK(dagger(ComplexMat2{0.0, u, 1.0 / u, 0.0}) == ComplexMat2{0.0, 1.0 / u, u, 0.0});
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    const auto x = oracle::random_matrix(rng), y = oracle::random_matrix(rng);
    CHECK(dagger(dagger(x)) == x);
    CHECK(dist(dagger(x * y), dagger(y) * dagger(x)) < 1e-14);
  }
}

TEST_CASE("frobenius norm") {
  CHECK(frobenius_norm(ComplexMat2::zero()) == 0.0);
  CHECK(frobenius_norm(ComplexMat2::identity()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(frobenius_norm(3.0 * ComplexMat2::sigma3()) == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(frobenius_norm(ComplexMat2{1e-300, 0.0, 0.0, 0.0}) > 0.0);
}

TEST_CASE("random_su2 is deterministic and unitary") {
  CHECK(random_su2(42).matrix() == random_su2(42).matrix());
  CHECK(random_su2(42).matrix() != random_su2(43).matrix());
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto g = random_su2(s);
    const auto& m = g.matrix();
    CHECK(dist(m * dagger(m), ComplexMat2::identity()) < 1e-12);
    CHECK(std::abs(m.det() - 1.0) < 1e-12);
  }
}

TEST_CASE("random_su2 entries average to zero (Haar)") {
  const int n = 10000;
  ComplexMat2 mean{};
  for (int s = 0; s < n; ++s) mean += random_su2(static_cast<std::uint64_t>(s)).matrix();
  mean *= 1.0 / n;
  for (cplx e : {mean.e11, mean.e12, mean.e21, mean.e22}) CHECK(std::abs(e) < 0.05);
}

TEST_CASE("conjugation preserves norm and trace") {
  std::mt19937_64 rng(14);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto g = random_su2(s);
    const auto x = oracle::random_matrix(rng);
    const auto y = g.conjugate(x);
    CHECK(std::fabs(frobenius_norm(y) - frobenius_norm(x)) <= 1e-12 * frobenius_norm(x));
    CHECK(std::abs(y.trace() - x.trace()) < 1e-14);
    CHECK(dist(g.inverse() * g.matrix(), ComplexMat2::identity()) < 1e-14);
  }
}

TEST_CASE("from_quaternion normalises its input") {
  const auto g = SU2Element::from_quaternion(2.0, 0.0, 0.0, 0.0);
  CHECK(dist(g.matrix(), ComplexMat2::identity()) < 1e-15);
  const auto h = SU2Element::from_quaternion(0.0, 0.0, 0.0, 5.0);
  CHECK(dist(h.matrix(), I * ComplexMat2::sigma3()) < 1e-15);
}

TEST_CASE("exp_unit_generator matches a Taylor-series exponential") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    double n[3] = {u(rng), u(rng), u(rng)};
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    const ComplexMat2 x = I * ((n[0] / len) * ComplexMat2::sigma1() + (n[1] / len) * ComplexMat2::sigma2() +
                               (n[2] / len) * ComplexMat2::sigma3());
    const double t = 3.0 * u(rng);
    ComplexMat2 term = ComplexMat2::identity(), sum = ComplexMat2::identity();
    for (int j = 1; j < 60; ++j) {
      term = (t / j) * (term * x);
      sum += term;
    }
    CHECK(dist(exp_unit_generator(x, t), sum) < 1e-13);
  }
}

TEST_CASE("unit_uniform maps raw bits into [0, 1)") {
  CHECK(unit_uniform(0) == 0.0);
  CHECK(unit_uniform(~std::uint64_t{0}) < 1.0);
  CHECK(unit_uniform(std::uint64_t{1} << 63) == 0.5);
}
