#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace expgm {

using Rational = mpq_class;

/// Parses "3", "-7", "2/6" into a canonical rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Dense univariate polynomial in t over Q. Coefficients are stored by
/// ascending degree; the leading stored coefficient is never zero.
class TPoly {
 public:
  TPoly() = default;
  explicit TPoly(Rational constant);
  explicit TPoly(std::vector<Rational> coefficients);

  static TPoly monomial(Rational coefficient, int degree);
  static TPoly variable() { return monomial(Rational(1), 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  Rational coeff(int k) const;
  const Rational& leading() const;
  std::span<const Rational> coefficients() const { return coeffs_; }

  TPoly derivative() const;
  TPoly scaled(const Rational& factor) const;
  TPoly monic() const;

  /// Positive rational c such that p / c has coprime integer coefficients
  /// (and a positive leading coefficient).
  Rational content() const;
  TPoly primitive() const;

  Rational eval(const Rational& t) const;
  std::complex<double> eval(std::complex<double> t) const;

  std::string to_string(char var = 't') const;

  TPoly operator-() const;
  TPoly& operator+=(const TPoly& other);
  TPoly& operator-=(const TPoly& other);
  friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
  friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
  friend TPoly operator*(const TPoly& a, const TPoly& b);
  friend bool operator==(const TPoly& a, const TPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; throws std::domain_error when b is zero.
  static std::pair<TPoly, TPoly> divmod(const TPoly& a, const TPoly& b);

  /// Division that must leave no remainder (checked).
  static TPoly exact_div(const TPoly& a, const TPoly& b);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
TPoly gcd(TPoly a, TPoly b);

/// Square-free decomposition: returns pairs (a_i, i) with p = c * prod a_i^i,
/// each a_i monic, square-free and pairwise coprime.
std::vector<std::pair<TPoly, int>> squarefree_decomposition(const TPoly& p);

}  // namespace expgm
