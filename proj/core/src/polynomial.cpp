#include "ymh/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

namespace ymh {

namespace {

constexpr unsigned kMaxExponent = 256;

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  Polynomial run() {
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    Polynomial p = expr();
    skip_ws();
    if (!at_end()) {
      if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '(')
        throw ParseError("implicit multiplication is not allowed; use '*'", pos_);
      throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
    }
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('+')) return unary();
    if (accept('-')) return unary() * cplx{-1.0};
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("exponent must be a nonnegative integer", start);
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (!at_end() && (peek() == '.' || peek() == 'e' || peek() == 'E'))
        throw ParseError("exponent must be a nonnegative integer", start);
      unsigned n = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, n);
      if (ec != std::errc{} || n > kMaxExponent)
        throw ParseError("exponent too large (limit " + std::to_string(kMaxExponent) + ")",
                         start);
      return base.pow(n);
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    if (at_end()) throw ParseError("unexpected end of expression", pos_);
    const char c = peek();
    if (c == '(') {
      const std::size_t open = pos_;
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("missing ')' for '(' opened here", open);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Polynomial number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.'))
      ++pos_;
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
        pos_ = save;
      } else {
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc{} || ptr != text_.data() + pos_)
      throw ParseError("malformed number", start);
    return Polynomial::constant(cplx{v}, nvars_);
  }

  Polynomial identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "i") return Polynomial::constant(cplx{0.0, 1.0}, nvars_);
    if (name.size() >= 2 && name[0] == 'z' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      std::size_t idx = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (ec == std::errc{} && idx >= 1 && idx <= nvars_)
        return Polynomial::variable(idx - 1, nvars_);
    }
    throw ParseError("unknown variable '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)),
      position_(position) {}

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) throw std::invalid_argument("polynomial needs at least one variable");
}

Polynomial Polynomial::constant(cplx c, std::size_t nvars) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars, 0u), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t index, std::size_t nvars) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Polynomial p(nvars);
  Monomial m(nvars, 0u);
  m[index] = 1;
  p.add_term(m, cplx{1.0});
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_)
    d = std::max(d, static_cast<int>(std::accumulate(m.begin(), m.end(), 0u)));
  return d;
}

cplx Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? cplx{} : it->second;
}

void Polynomial::add_term(const Monomial& m, cplx c) {
  if (m.size() != nvars_) throw std::invalid_argument("monomial arity mismatch");
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

cplx Polynomial::eval(std::span<const cplx> z) const {
  if (z.size() != nvars_) throw std::invalid_argument("point arity mismatch");
  cplx sum{};
  for (const auto& [m, c] : terms_) {
    cplx term = c;
    for (std::size_t v = 0; v < nvars_; ++v)
      for (unsigned k = 0; k < m[v]; ++k) term *= z[v];
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::partial(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("partial: variable index out of range");
  Polynomial d(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial dm = m;
    --dm[var];
    d.add_term(dm, c * static_cast<double>(m[var]));
  }
  return d;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string vars;
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (m[v] == 0) continue;
      if (!vars.empty()) vars += '*';
      vars += "z" + std::to_string(v + 1);
      if (m[v] > 1) vars += "^" + std::to_string(m[v]);
    }
    std::string coef;
    bool negative = false;
    if (c.imag() == 0.0) {
      negative = std::signbit(c.real());
      const double a = std::abs(c.real());
      if (a != 1.0 || vars.empty()) coef = format_real(a);
    } else {
      coef = "(" + format_real(c.real()) + (c.imag() < 0.0 ? "-" : "+") + format_real(std::abs(c.imag())) + "*i)";
    }
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += coef;
    if (!coef.empty() && !vars.empty()) out += '*';
    out += vars;
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
  if (s == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  std::erase_if(terms_, [](const auto& kv) { return kv.second == cplx{}; });
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial arity mismatch");
  Polynomial out(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m(a.nvars_);
      for (std::size_t v = 0; v < a.nvars_; ++v) m[v] = ma[v] + mb[v];
      out.add_term(m, ca * cb);
    }
  return out;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial out = constant(cplx{1.0}, nvars_);
  for (unsigned k = 0; k < n; ++k) out = out * *this;
  return out;
}

Polynomial parse(std::string_view expr, std::size_t nvars) {
  return Parser(expr, nvars).run();
}

cplx parse_constant(std::string_view expr) {
  const Polynomial p = parse(expr, 1);
  if (p.degree() > 0) throw ParseError("expected a constant, found a variable", 0);
  return p.coefficient(Monomial{0u});
}

}  // namespace ymh
