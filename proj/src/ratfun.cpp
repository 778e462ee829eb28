#include "expgm/ratfun.hpp"

#include <stdexcept>

#include "expgm/error.hpp"
#include "expgm/laurent.hpp"

namespace expgm {

RatFun::RatFun(TPoly numerator, TPoly denominator) : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw std::domain_error("RatFun with zero denominator");
  normalize();
}

void RatFun::normalize() {
  if (num_.is_zero()) {
    den_ = TPoly(Rational(1));
    return;
  }
  if (den_.degree() > 0) {
    TPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = TPoly::exact_div(num_, g);
      den_ = TPoly::exact_div(den_, g);
    }
  }
  const Rational lead = den_.leading();
  if (lead != 1) {
    num_ = num_.scaled(1 / lead);
    den_ = den_.scaled(1 / lead);
  }
}

RatFun RatFun::derivative() const {
  if (is_polynomial()) return RatFun(num_.derivative());
  return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  return RatFun(den_, num_);
}

std::complex<double> RatFun::eval(std::complex<double> t) const {
  const std::complex<double> d = den_.eval(t);
  if (d == 0.0) throw std::domain_error("rational function evaluated at a pole");
  return num_.eval(t) / d;
}

std::string RatFun::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatFun RatFun::operator-() const {
  RatFun out = *this;
  out.num_ = -out.num_;
  return out;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_polynomial() && b.is_polynomial()) return RatFun(a.num_ * b.num_);
  return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }

RatFun parse_ratfun(const std::string& text) {
  // Split at a top-level '/' followed by '(' so that "1/2*t" stays a polynomial.
  int depth = 0;
  std::size_t split = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '/' && depth == 0) {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] == ' ') ++j;
      if (j < text.size() && text[j] == '(') split = i;
    }
  }
  auto as_tpoly = [](const std::string& s) {
    LaurentPoly p = parse_laurent(s);
    if (!p.is_zero() && (p.min_u_exponent() != 0 || p.max_u_exponent() != 0))
      throw Error(ErrorCode::ParseError, "rational function must not depend on u: '" + s + "'");
    return p.coeff(0);
  };
  if (split == std::string::npos) return RatFun(as_tpoly(text));
  TPoly den = as_tpoly(text.substr(split + 1));
  if (den.is_zero()) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  return RatFun(as_tpoly(text.substr(0, split)), den);
}

namespace {

// Gaussian elimination over Q(t) to row echelon form. Returns pivot columns.
std::vector<std::size_t> echelon(RatMatrix& m, std::size_t ncols, RatFun* det_sign = nullptr) {
  std::vector<std::size_t> pivots;
  const std::size_t nrows = m.size();
  std::size_t row = 0;
  RatFun det(Rational(1));
  for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
    // Prefer the pivot of lowest total degree to limit growth.
    std::size_t best = nrows;
    int best_deg = 0;
    for (std::size_t r = row; r < nrows; ++r) {
      if (m[r][col].is_zero()) continue;
      const int deg = m[r][col].num().degree() + m[r][col].den().degree();
      if (best == nrows || deg < best_deg) {
        best = r;
        best_deg = deg;
      }
    }
    if (best == nrows) continue;
    if (best != row) {
      std::swap(m[best], m[row]);
      det = -det;
    }
    const RatFun inv = m[row][col].inverse();
    det *= m[row][col];
    for (std::size_t c = col; c < m[row].size(); ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const RatFun factor = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) {
        if (!m[row][c].is_zero()) m[r][c] -= factor * m[row][c];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  if (det_sign) *det_sign = det;
  return pivots;
}

}  // namespace

RatVector solve_linear_ratfun(const RatMatrix& m, const RatVector& b) {
  const std::size_t n = m.size();
  if (b.size() != n) throw std::invalid_argument("solve_linear_ratfun: dimension mismatch");
  RatMatrix aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    if (aug[i].size() != n) throw std::invalid_argument("solve_linear_ratfun: matrix not square");
    aug[i].push_back(b[i]);
  }
  const auto pivots = echelon(aug, n);
  if (pivots.size() < n) throw Error(ErrorCode::SingularOverQt, "matrix is singular over Q(t)");
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

RatFun determinant(RatMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return RatFun(Rational(1));
  RatFun det;
  const auto pivots = echelon(m, n, &det);
  if (pivots.size() < n) return {};
  return det;
}

int rank(RatMatrix m) {
  if (m.empty()) return 0;
  const std::size_t ncols = m.front().size();
  return static_cast<int>(echelon(m, ncols).size());
}

std::vector<RatVector> kernel(const RatMatrix& m) {
  if (m.empty()) return {};
  RatMatrix work = m;
  const std::size_t ncols = work.front().size();
  const auto pivots = echelon(work, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> out;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    RatVector v(ncols);
    v[free] = RatFun(Rational(1));
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

RatMatrix identity_matrix(std::size_t n) {
  RatMatrix id(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = RatFun(Rational(1));
  return id;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k == 0 ? 0 : b.front().size();
  RatMatrix out(n, RatVector(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < k; ++l)
        if (!a[i][l].is_zero() && !b[l][j].is_zero()) out[i][j] += a[i][l] * b[l][j];
  return out;
}

RatVector multiply(const RatMatrix& a, const RatVector& x) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (!a[i][j].is_zero() && !x[j].is_zero()) out[i] += a[i][j] * x[j];
  return out;
}

RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.size();
  RatMatrix aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n);
    aug[i][n + i] = RatFun(Rational(1));
  }
  const auto pivots = echelon(aug, n);
  if (pivots.size() < n) throw Error(ErrorCode::SingularOverQt, "matrix is singular over Q(t)");
  RatMatrix out(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

}  // namespace expgm
