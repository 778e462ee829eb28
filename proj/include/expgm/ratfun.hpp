#pragma once

#include <complex>
#include <string>
#include <vector>

#include "expgm/tpoly.hpp"

namespace expgm {

/// Element of Q(t) kept in lowest terms with a monic denominator.
class RatFun {
 public:
  RatFun() : den_(Rational(1)) {}
  RatFun(Rational constant) : num_(std::move(constant)), den_(Rational(1)) {}  // NOLINT(implicit)
  RatFun(TPoly numerator) : num_(std::move(numerator)), den_(Rational(1)) {}    // NOLINT(implicit)
  RatFun(TPoly numerator, TPoly denominator);

  const TPoly& num() const { return num_; }
  const TPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatFun derivative() const;
  RatFun inverse() const;

  /// Throws std::domain_error when t is (numerically) a pole.
  std::complex<double> eval(std::complex<double> t) const;

  /// "num" when the denominator is 1, otherwise "(num)/(den)".
  std::string to_string() const;

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  RatFun& operator+=(const RatFun& b) { return *this = *this + b; }
  RatFun& operator-=(const RatFun& b) { return *this = *this - b; }
  RatFun& operator*=(const RatFun& b) { return *this = *this * b; }
  friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  void normalize();
  TPoly num_;
  TPoly den_;
};

/// Parses "(p)/(q)", "p" or "p/(q)" where p, q are polynomials in t.
RatFun parse_ratfun(const std::string& text);

using RatVector = std::vector<RatFun>;
using RatMatrix = std::vector<std::vector<RatFun>>;

/// Exact solve of M x = b over Q(t); throws SingularOverQt when det M == 0.
RatVector solve_linear_ratfun(const RatMatrix& m, const RatVector& b);

RatFun determinant(RatMatrix m);
int rank(RatMatrix m);

/// Basis of the right kernel {x : M x = 0}, in reduced echelon normalization.
std::vector<RatVector> kernel(const RatMatrix& m);

RatMatrix identity_matrix(std::size_t n);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
RatVector multiply(const RatMatrix& a, const RatVector& x);
RatMatrix inverse(const RatMatrix& m);

}  // namespace expgm
