#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ymh/algebra.hpp"

namespace ymh {

/// Exponent tuple (n_1, ..., n_k).
using Monomial = std::vector<unsigned>;

/// Raised by parse() on malformed input; `position` is the 0-based offset
/// into the expression where the problem was detected.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Multivariate polynomial with complex coefficients in variables z1..zk.
/// Zero coefficients are never stored.
class Polynomial {
 public:
  explicit Polynomial(std::size_t nvars = 2);

  static Polynomial constant(cplx c, std::size_t nvars = 2);
  /// z_{index+1}
  static Polynomial variable(std::size_t index, std::size_t nvars = 2);

  std::size_t nvars() const { return nvars_; }
  const std::map<Monomial, cplx>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Maximum total exponent; -1 for the zero polynomial.
  int degree() const;

  /// Coefficient of the given monomial (zero if absent).
  cplx coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, cplx c);

  cplx eval(std::span<const cplx> z) const;
  cplx eval(const CPoint& z) const { return eval(std::span<const cplx>(z)); }

  /// Exact partial derivative with respect to z_{var+1}; var is 0-based.
  Polynomial partial(std::size_t var) const;

  /// Round-trippable text form in the parse() grammar.
  std::string to_string() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(unsigned n) const;

 private:
  std::size_t nvars_;
  std::map<Monomial, cplx> terms_;
};

/// Parse an expression over z1..z{nvars}. Grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary ('*' unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' integer)?
///   primary := number | 'i' | 'z' digits | '(' expr ')'
///
/// Numbers are decimal literals (optional fraction and exponent). There is
/// no implicit multiplication; `2z1` is a syntax error.
Polynomial parse(std::string_view expr, std::size_t nvars = 2);

/// Parse a constant expression (no variables), e.g. "1", "i", "0.5-2*i".
cplx parse_constant(std::string_view expr);

}  // namespace ymh
