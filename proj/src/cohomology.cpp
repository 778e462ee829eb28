#include "expgm/cohomology.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "expgm/error.hpp"

namespace expgm {

std::string to_string(FiberType fiber) {
  return fiber == FiberType::AffineLine ? "affine_line" : "punctured_line";
}

FiberType parse_fiber(const std::string& text) {
  if (text == "affine_line") return FiberType::AffineLine;
  if (text == "punctured_line") return FiberType::PuncturedLine;
  throw Error(ErrorCode::ParseError, "unknown fiber type '" + text + "'");
}

void ProblemSpec::validate() const {
  if (partial(g, Variable::U).is_zero())
    throw Error(ErrorCode::InvalidSpec, "g must depend on u (f and g algebraically independent)");
  if (fiber == FiberType::AffineLine && g.min_u_exponent() < 0)
    throw Error(ErrorCode::InvalidSpec, "negative powers of u are only allowed on the punctured line");
}

int ProblemSpec::top_degree() const { return std::max(0, g.max_u_exponent()); }
int ProblemSpec::pole_order() const { return std::max(0, -g.min_u_exponent()); }

namespace {

struct Window {
  int low = 0;
  int high = -1;  // empty when high < low
};

// Exponents (in terms of u^k du) that survive reduction.
Window basis_window(const ProblemSpec& spec) {
  const int d = spec.top_degree();
  const int e = spec.pole_order();
  if (spec.fiber == FiberType::AffineLine) return {0, d - 2};
  if (d >= 1 && e >= 1) return {-e, d - 1};
  if (e == 0) return {-1, d - 2};
  return {-e, -1};
}

using RatLaurent = std::map<int, RatFun>;

RatLaurent to_rat(const LaurentPoly& p) {
  RatLaurent out;
  for (const auto& [k, c] : p.terms()) out.emplace(k, RatFun(c));
  return out;
}

void axpy(RatLaurent& acc, const RatFun& factor, const RatLaurent& x) {
  for (const auto& [k, c] : x) {
    RatFun delta = factor * c;
    auto [it, inserted] = acc.try_emplace(k, delta);
    if (!inserted) {
      it->second += delta;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

class Reducer {
 public:
  Reducer(const ProblemSpec& spec, const CohomologyBasis& basis)
      : spec_(spec), basis_(basis), window_(basis_window(spec)), dg_(partial(spec.g, Variable::U)) {}

  RatVector reduce(const LaurentPoly& p) const {
    RatLaurent work = to_rat(p);
    // Kill exponents above the window from the top down, then those below it
    // from the bottom up; the second phase never refills the top.
    while (!work.empty() && work.rbegin()->first > window_.high) {
      const int m = work.rbegin()->first;
      eliminate(work, m, /*top=*/true);
    }
    while (!work.empty() && work.begin()->first < window_.low) {
      const int m = work.begin()->first;
      eliminate(work, m, /*top=*/false);
    }
    RatVector out(basis_.exponents.size());
    for (std::size_t i = 0; i < basis_.exponents.size(); ++i) {
      auto it = work.find(basis_.exponents[i]);
      if (it != work.end()) out[i] = it->second;
    }
    return out;
  }

 private:
  // Exponent k such that the relation nabla(u^k) has extreme exponent m.
  int relation_index(int m, bool top) const {
    const int d = spec_.top_degree();
    const int e = spec_.pole_order();
    if (top) return d >= 1 ? m - d + 1 : m + 1;
    return e >= 1 ? m + e + 1 : m + 1;
  }

  void eliminate(RatLaurent& work, int m, bool top) const {
    const int k = relation_index(m, top);
    const RatLaurent rel = to_rat(twisted_differential(spec_, LaurentPoly::u_power(k)));
    const int extreme = rel.empty() ? m + 1 : (top ? rel.rbegin()->first : rel.begin()->first);
    if (rel.empty() || extreme != m)
      throw Error(ErrorCode::ReductionDiverges, "no relation with extreme exponent " + std::to_string(m));
    const RatFun& lead = top ? rel.rbegin()->second : rel.begin()->second;
    const RatFun factor = -(work.at(m) / lead);
    axpy(work, factor, rel);
    work.erase(m);  // exact cancellation; erase guards against a stale zero entry
  }

  const ProblemSpec& spec_;
  const CohomologyBasis& basis_;
  Window window_;
  LaurentPoly dg_;
};

}  // namespace

CohomologyBasis fiber_basis(const ProblemSpec& spec) {
  spec.validate();
  if (spec.g.coeff(spec.g.max_u_exponent()).is_zero())
    throw Error(ErrorCode::DegenerateFamily, "leading coefficient of g vanishes identically");
  const Window w = basis_window(spec);
  CohomologyBasis basis;
  for (int k = w.low; k <= w.high; ++k) basis.exponents.push_back(k);
  basis.rank = static_cast<int>(basis.exponents.size());
  return basis;
}

LaurentPoly twisted_differential(const ProblemSpec& spec, const LaurentPoly& q) {
  return partial(q, Variable::U) + q * partial(spec.g, Variable::U);
}

LaurentPoly derivative_form(const ProblemSpec& spec, const LaurentPoly& p) {
  return partial(p, Variable::T) + p * partial(spec.g, Variable::T);
}

RatVector reduce_form(const LaurentPoly& p, const ProblemSpec& spec, const CohomologyBasis& basis) {
  if (spec.fiber == FiberType::AffineLine && !p.is_zero() && p.min_u_exponent() < 0)
    throw Error(ErrorCode::InvalidSpec, "form has negative u-powers on the affine line");
  return Reducer(spec, basis).reduce(p);
}

ConnectionMatrix connection_matrix(const ProblemSpec& spec, const CohomologyBasis& basis) {
  const Reducer reducer(spec, basis);
  ConnectionMatrix out;
  for (int e : basis.exponents) out.a.push_back(reducer.reduce(derivative_form(spec, LaurentPoly::u_power(e))));
  return out;
}

ScalarODE cyclic_ode(const ConnectionMatrix& a, std::size_t start) {
  const std::size_t r = a.size();
  if (r == 0) return ScalarODE{{TPoly(Rational(1))}};
  if (start >= r) throw std::out_of_range("cyclic_ode: start index out of range");

  // Row vectors v_k with y^{(k)} = v_k . Y;  v_{k+1} = v_k' + v_k A.
  std::vector<RatVector> derivs;
  RatVector v(r);
  v[start] = RatFun(Rational(1));
  derivs.push_back(v);
  for (std::size_t order = 1; order <= r; ++order) {
    const RatVector& prev = derivs.back();
    RatVector next(r);
    for (std::size_t j = 0; j < r; ++j) {
      next[j] = prev[j].derivative();
      for (std::size_t i = 0; i < r; ++i)
        if (!prev[i].is_zero() && !a.a[i][j].is_zero()) next[j] += prev[i] * a.a[i][j];
    }
    derivs.push_back(next);

    // Columns v_0..v_order; look for a kernel vector with last entry nonzero.
    RatMatrix m(r, RatVector(order + 1));
    for (std::size_t c = 0; c <= order; ++c)
      for (std::size_t i = 0; i < r; ++i) m[i][c] = derivs[c][i];
    const auto ker = kernel(m);
    if (ker.empty()) continue;
    // The previous vectors were independent, so the kernel is one-dimensional
    // with a nonzero last entry.
    RatVector relation = ker.front();
    const RatFun scale = relation[order].inverse();
    for (auto& x : relation) x = x * scale;
    TPoly common(Rational(1));
    for (const auto& x : relation) common = common * TPoly::exact_div(x.den(), gcd(common, x.den()));
    std::vector<TPoly> coeffs;
    for (const auto& x : relation) coeffs.push_back(TPoly::exact_div(x.num() * common, x.den()));
    // Remove common polynomial factors, then the rational content, and make
    // the leading coefficient's leading term positive.
    TPoly poly_gcd;
    for (const auto& c : coeffs) poly_gcd = gcd(poly_gcd, c);
    mpz_class num_gcd = 0;
    mpz_class den_lcm = 1;
    for (auto& c : coeffs) {
      c = TPoly::exact_div(c, poly_gcd);
      for (const auto& q : c.coefficients()) {
        if (sgn(q) == 0) continue;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
      }
    }
    Rational content(num_gcd, den_lcm);
    content.canonicalize();
    if (sgn(coeffs.back().leading()) < 0) content = -content;
    for (auto& c : coeffs) c = c.scaled(1 / content);
    return ScalarODE{std::move(coeffs)};
  }
  throw std::logic_error("cyclic_ode: no dependence found up to the matrix size");
}

std::string ScalarODE::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (int j = order(); j >= 0; --j) {
    const TPoly& c = coefficients[static_cast<std::size_t>(j)];
    if (c.is_zero()) continue;
    std::string y = "y" + std::string(static_cast<std::size_t>(j), '\'');
    std::string coeff = c.to_string();
    bool negative = sgn(c.leading()) < 0;
    TPoly shown = negative ? -c : c;
    std::string body;
    if (shown.degree() == 0 && shown.leading() == 1) {
      body = y;
    } else {
      const bool single_term =
          std::count_if(shown.coefficients().begin(), shown.coefficients().end(), [](const Rational& q) { return sgn(q) != 0; }) == 1;
      body = single_term ? shown.to_string() + "*" + y : "(" + shown.to_string() + ")*" + y;
    }
    if (first) {
      out << (negative ? "-" : "") << body;
    } else {
      out << (negative ? " - " : " + ") << body;
    }
    first = false;
  }
  return first ? "0" : out.str();
}

}  // namespace expgm
