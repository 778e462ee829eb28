#include "expgm/laurent.hpp"

#include <cctype>
#include <sstream>

#include "expgm/error.hpp"

namespace expgm {

LaurentPoly::LaurentPoly(TPoly constant_in_u) {
  if (!constant_in_u.is_zero()) terms_.emplace(0, std::move(constant_in_u));
}

LaurentPoly::LaurentPoly(Terms terms) : terms_(std::move(terms)) { prune(); }

LaurentPoly LaurentPoly::monomial(const Rational& c, int t_degree, int u_exponent) {
  Terms terms;
  terms.emplace(u_exponent, TPoly::monomial(c, t_degree));
  return LaurentPoly(std::move(terms));
}

void LaurentPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

int LaurentPoly::max_u_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
int LaurentPoly::min_u_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }

TPoly LaurentPoly::coeff(int u_exponent) const {
  auto it = terms_.find(u_exponent);
  return it == terms_.end() ? TPoly{} : it->second;
}

int LaurentPoly::max_t_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, c.degree());
  return d;
}

LaurentPoly LaurentPoly::scaled(const TPoly& factor) const {
  Terms out;
  if (factor.is_zero()) return {};
  for (const auto& [k, c] : terms_) out.emplace(k, c * factor);
  return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::shifted(int u_shift) const {
  Terms out;
  for (const auto& [k, c] : terms_) out.emplace(k + u_shift, c);
  return LaurentPoly(std::move(out));
}

std::complex<double> LaurentPoly::eval(std::complex<double> t, std::complex<double> u) const {
  std::complex<double> acc(0.0);
  for (const auto& [k, c] : terms_) acc += c.eval(t) * std::pow(u, k);
  return acc;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const int k = it->first;
    const TPoly& c = it->second;
    for (int j = c.degree(); j >= 0; --j) {
      const Rational q = c.coeff(j);
      if (sgn(q) == 0) continue;
      if (first) {
        if (sgn(q) < 0) out << "-";
      } else {
        out << (sgn(q) < 0 ? " - " : " + ");
      }
      first = false;
      const Rational mag = abs(q);
      std::string mono;
      if (j > 0) mono = j == 1 ? "t" : "t^" + std::to_string(j);
      if (k != 0) {
        if (!mono.empty()) mono += "*";
        mono += k == 1 ? "u" : "u^" + std::to_string(k);
      }
      if (mono.empty()) {
        out << mag.get_str();
      } else if (mag == 1) {
        out << mono;
      } else {
        out << mag.get_str() << "*" << mono;
      }
    }
  }
  return out.str();
}

LaurentPoly LaurentPoly::operator-() const { return scaled(Rational(-1)); }

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (const auto& [k, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) { return *this += -other; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly::Terms out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      auto [it, inserted] = out.try_emplace(ka + kb, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  return LaurentPoly(std::move(out));
}

LaurentPoly poly_arith(const LaurentPoly& a, const LaurentPoly& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  return {};
}

LaurentPoly partial(const LaurentPoly& p, Variable var) {
  LaurentPoly::Terms out;
  for (const auto& [k, c] : p.terms()) {
    if (var == Variable::U) {
      if (k != 0) out.emplace(k - 1, c.scaled(Rational(k)));
    } else {
      out.emplace(k, c.derivative());
    }
  }
  return LaurentPoly(std::move(out));
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  LaurentPoly parse() {
    LaurentPoly value = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  LaurentPoly expression() {
    LaurentPoly acc;
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  LaurentPoly term() {
    LaurentPoly acc = power();
    while (true) {
      if (accept('*')) {
        acc = acc * power();
      } else if (accept('/')) {
        acc = acc * invert(power());
      } else {
        break;
      }
    }
    return acc;
  }

  // Only monomials c*u^k with c a nonzero rational are invertible.
  LaurentPoly invert(const LaurentPoly& p) {
    if (p.terms().size() != 1 || !p.terms().begin()->second.is_constant())
      fail("division is only supported by constants and monomials in u");
    const auto& [k, c] = *p.terms().begin();
    return LaurentPoly::monomial(1 / c.leading(), 0, -k);
  }

  LaurentPoly power() {
    LaurentPoly base = primary();
    if (!accept('^')) return base;
    skip_space();
    bool negative = false;
    if (accept('-')) negative = true;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    const int exponent = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (negative) base = invert(base);
    LaurentPoly out = LaurentPoly::u_power(0);
    for (int i = 0; i < exponent; ++i) out = out * base;
    return out;
  }

  LaurentPoly primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      LaurentPoly inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 't') {
      ++pos_;
      return LaurentPoly::monomial(Rational(1), 1, 0);
    }
    if (c == 'u') {
      ++pos_;
      return LaurentPoly::u_power(1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return LaurentPoly(TPoly(parse_rational(std::string(text_.substr(start, pos_ - start)))));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(std::string_view text) { return Parser(text).parse(); }

}  // namespace expgm
