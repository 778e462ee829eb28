#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>

#include "expgm/tpoly.hpp"

namespace expgm {

enum class Variable { U, T };

/// Element of Q[t][u, 1/u]: sparse in the u-exponent, dense in t.
class LaurentPoly {
 public:
  using Terms = std::map<int, TPoly>;

  LaurentPoly() = default;
  explicit LaurentPoly(TPoly constant_in_u);
  explicit LaurentPoly(Terms terms);

  static LaurentPoly monomial(const Rational& c, int t_degree, int u_exponent);
  static LaurentPoly u_power(int u_exponent) { return monomial(Rational(1), 0, u_exponent); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_u_exponent() const;
  int min_u_exponent() const;
  TPoly coeff(int u_exponent) const;
  int max_t_degree() const;

  LaurentPoly scaled(const TPoly& factor) const;
  LaurentPoly scaled(const Rational& factor) const { return scaled(TPoly(factor)); }
  LaurentPoly shifted(int u_shift) const;

  /// Value at numeric (t, u).
  std::complex<double> eval(std::complex<double> t, std::complex<double> u) const;

  /// Canonical text: u-exponents descending, t-degrees descending.
  std::string to_string() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

 private:
  void prune();
  Terms terms_;
};

enum class ArithOp { Add, Sub, Mul };

LaurentPoly poly_arith(const LaurentPoly& a, const LaurentPoly& b, ArithOp op);
LaurentPoly partial(const LaurentPoly& p, Variable var);

/// Parses expressions in t and u: rational literals, + - * /, ^ with integer
/// exponents, parentheses. Division is allowed by nonzero constants and by
/// monomials in u; negative powers are allowed only for monomials in u.
LaurentPoly parse_laurent(std::string_view text);

}  // namespace expgm
