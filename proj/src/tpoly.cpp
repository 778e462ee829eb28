#include "expgm/tpoly.hpp"

#include <sstream>
#include <stdexcept>

#include "expgm/error.hpp"

namespace expgm {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational literal '" + text + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

TPoly::TPoly(Rational constant) : coeffs_{std::move(constant)} { trim(); }

TPoly::TPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

TPoly TPoly::monomial(Rational coefficient, int degree) {
  if (degree < 0) throw std::invalid_argument("negative degree in TPoly::monomial");
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
  c[static_cast<std::size_t>(degree)] = std::move(coefficient);
  return TPoly(std::move(c));
}

void TPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational TPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

const Rational& TPoly::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return coeffs_.back();
}

TPoly TPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return TPoly(std::move(d));
}

TPoly TPoly::scaled(const Rational& factor) const {
  if (sgn(factor) == 0) return {};
  TPoly out = *this;
  for (auto& c : out.coeffs_) c *= factor;
  return out;
}

TPoly TPoly::monic() const {
  if (is_zero()) return {};
  return scaled(1 / leading());
}

Rational TPoly::content() const {
  if (is_zero()) return Rational(1);
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& c : coeffs_) {
    if (sgn(c) == 0) continue;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational out(num_gcd, den_lcm);
  out.canonicalize();
  if (sgn(leading()) < 0) out = -out;
  return out;
}

TPoly TPoly::primitive() const {
  if (is_zero()) return {};
  return scaled(1 / content());
}

Rational TPoly::eval(const Rational& t) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::complex<double> TPoly::eval(std::complex<double> t) const {
  std::complex<double> acc(0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

std::string TPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << var;
    if (k > 1) out << "^" << k;
  }
  return out.str();
}

TPoly TPoly::operator-() const { return scaled(Rational(-1)); }

TPoly& TPoly::operator+=(const TPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

TPoly& TPoly::operator-=(const TPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

TPoly operator*(const TPoly& a, const TPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return TPoly(std::move(c));
}

std::pair<TPoly, TPoly> TPoly::divmod(const TPoly& a, const TPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {TPoly{}, a};
  std::vector<Rational> rem = a.coeffs_;
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
  const Rational inv_lead = 1 / b.leading();
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    const Rational q = rem[static_cast<std::size_t>(k)] * inv_lead;
    if (sgn(q) == 0) continue;
    quo[static_cast<std::size_t>(k - db)] = q;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * b.coeffs_[static_cast<std::size_t>(j)];
  }
  return {TPoly(std::move(quo)), TPoly(std::move(rem))};
}

TPoly TPoly::exact_div(const TPoly& a, const TPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("TPoly::exact_div: nonzero remainder");
  return q;
}

TPoly gcd(TPoly a, TPoly b) {
  while (!b.is_zero()) {
    TPoly r = TPoly::divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::vector<std::pair<TPoly, int>> squarefree_decomposition(const TPoly& p) {
  // Yun's algorithm (characteristic zero).
  std::vector<std::pair<TPoly, int>> out;
  if (p.degree() < 1) return out;
  TPoly a = p.monic();
  TPoly da = a.derivative();
  TPoly b = gcd(a, da);
  TPoly c = TPoly::exact_div(a, b);
  TPoly d = TPoly::exact_div(da, b) - c.derivative();
  int i = 1;
  while (c.degree() >= 1) {
    TPoly factor = gcd(c, d);
    if (factor.degree() >= 1) out.emplace_back(factor, i);
    c = TPoly::exact_div(c, factor);
    d = TPoly::exact_div(d, factor) - c.derivative();
    ++i;
  }
  return out;
}

}  // namespace expgm
