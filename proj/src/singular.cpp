#include "expgm/singular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>


#include "expgm/error.hpp"
#include "numeric_internal.hpp"

namespace expgm {

namespace mp = boost::multiprecision;

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::LeadingCoeffVanishes: return "LeadingCoeffVanishes";
    case Provenance::CriticalPointDegeneration: return "CriticalPointDegeneration";
    case Provenance::ConnectionPole: return "ConnectionPole";
  }
  return "";
}

Provenance parse_provenance(const std::string& text) {
  for (auto p : {Provenance::LeadingCoeffVanishes, Provenance::CriticalPointDegeneration, Provenance::ConnectionPole})
    if (to_string(p) == text) return p;
  throw Error(ErrorCode::ParseError, "unknown provenance '" + text + "'");
}

namespace {

using detail::to_real;
template <class Real>
using ComplexOf = detail::ComplexOf<Real>;

template <class Real>
struct Isolation {
  bool ok = false;
  std::vector<std::complex<double>> centers;
  std::vector<double> radii;
};

// Aberth iteration followed by Smith's inclusion theorem: the disks
// D(z_k, n |W_k|) with W_k = p(z_k) / (lc prod_{j != k} (z_k - z_j)) contain
// all roots, and each connected component of m disks contains m roots.
template <class Real>
Isolation<Real> isolate_squarefree(const TPoly& p) {
  using Cx = typename ComplexOf<Real>::type;
  using std::abs;
  const int n = p.degree();
  std::vector<Real> a;
  for (int k = 0; k <= n; ++k) a.push_back(to_real<Real>(p.coeff(k)));
  const Real eps = std::numeric_limits<Real>::epsilon();

  auto eval = [&](const Cx& z, Cx& dp) {
    Cx v(a[static_cast<std::size_t>(n)]);
    dp = Cx(0);
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * z + v;
      v = v * z + Cx(a[static_cast<std::size_t>(k)]);
    }
    return v;
  };

  Real bound = 0;
  for (int k = 0; k < n; ++k) bound = std::max<Real>(bound, Real(abs(a[static_cast<std::size_t>(k)] / a[static_cast<std::size_t>(n)])));
  bound = bound + 1;

  std::vector<Cx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n + 0.4;
    z[static_cast<std::size_t>(k)] = Cx(Real(bound / 2 * Real(std::cos(angle))), Real(bound / 2 * Real(std::sin(angle))));
  }
  for (int iter = 0; iter < 2000; ++iter) {
    Real max_step = 0;
    for (int k = 0; k < n; ++k) {
      Cx dp;
      const Cx pv = eval(z[static_cast<std::size_t>(k)], dp);
      if (abs(pv) == 0) continue;
      const Cx w = pv / dp;
      Cx sum(0);
      for (int j = 0; j < n; ++j)
        if (j != k) sum += Cx(1) / (z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)]);
      const Cx step = w / (Cx(1) - w * sum);
      z[static_cast<std::size_t>(k)] -= step;
      const Real scale = std::max<Real>(Real(1), Real(abs(z[static_cast<std::size_t>(k)])));
      max_step = std::max<Real>(max_step, Real(abs(step) / scale));
    }
    if (max_step < eps * 16) break;
  }

  Isolation<Real> out;
  const Real lead = a[static_cast<std::size_t>(n)];
  for (int k = 0; k < n; ++k) {
    Cx dp;
    const Cx pv = eval(z[static_cast<std::size_t>(k)], dp);
    Cx denom(lead);
    for (int j = 0; j < n; ++j)
      if (j != k) denom *= z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)];
    if (abs(denom) == 0) return out;
    const Real w = abs(pv / denom);
    const Real zk_abs = abs(z[static_cast<std::size_t>(k)]);
    // Factor 2 and the additive term absorb rounding in the evaluation and
    // in the final conversion to double.
    const Real radius_real = 2 * n * w + 64 * eps * std::max<Real>(Real(1), zk_abs);
    const double radius = static_cast<double>(radius_real) + 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, static_cast<double>(zk_abs));
    out.centers.emplace_back(static_cast<double>(real(z[static_cast<std::size_t>(k)])), static_cast<double>(imag(z[static_cast<std::size_t>(k)])));
    out.radii.push_back(radius);
  }
  out.ok = true;
  return out;
}

bool disjoint(const std::vector<RootBall>& balls) {
  for (std::size_t i = 0; i < balls.size(); ++i)
    for (std::size_t j = i + 1; j < balls.size(); ++j)
      if (std::abs(balls[i].center - balls[j].center) <= balls[i].radius + balls[j].radius) return false;
  return true;
}

template <class Real>
bool isolate_all(const std::vector<std::pair<TPoly, int>>& factors, std::vector<RootBall>& out) {
  out.clear();
  for (const auto& [factor, mult] : factors) {
    if (factor.degree() == 1) {
      const Rational root = -factor.coeff(0) / factor.coeff(1);
      const double c = root.get_d();
      out.push_back({{c, 0.0}, 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(c)), mult});
      continue;
    }
    const auto iso = isolate_squarefree<Real>(factor);
    if (!iso.ok) return false;
    for (std::size_t k = 0; k < iso.centers.size(); ++k) out.push_back({iso.centers[k], iso.radii[k], mult});
  }
  return disjoint(out);
}

}  // namespace

std::vector<RootBall> root_isolate(const TPoly& p, int digits) {
  if (p.is_zero()) throw std::invalid_argument("root_isolate: zero polynomial");
  std::vector<RootBall> balls;
  if (p.degree() == 0) return balls;
  const auto factors = squarefree_decomposition(p);
  bool ok = false;
  if (digits <= 15) ok = isolate_all<double>(factors, balls);
  if (!ok && digits <= 50) ok = isolate_all<mp::cpp_bin_float_50>(factors, balls);
  if (!ok) ok = isolate_all<mp::cpp_bin_float_100>(factors, balls);
  if (!ok) throw Error(ErrorCode::PrecisionExhausted, "could not separate the roots of " + p.to_string());
  std::sort(balls.begin(), balls.end(), [](const RootBall& a, const RootBall& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return balls;
}

TPoly discriminant_resultant(const LaurentPoly& p) {
  const int n = p.max_u_exponent();
  if (p.is_zero() || n < 1) throw std::invalid_argument("discriminant_resultant: need u-degree >= 1");
  const LaurentPoly q = partial(p, Variable::U);
  const int m = n - 1;
  const std::size_t size = static_cast<std::size_t>(n + m);
  RatMatrix syl(size, RatVector(size));
  // Rows 0..m-1 carry shifts of p, rows m..m+n-1 shifts of q (descending powers).
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) syl[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + n - k)] = RatFun(p.coeff(k));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) syl[static_cast<std::size_t>(m + r)][static_cast<std::size_t>(r + m - k)] = RatFun(q.coeff(k));
  const RatFun det = determinant(syl);
  if (!det.is_polynomial()) throw std::logic_error("resultant is not a polynomial");
  return det.num();
}

double SingularSet::distance(std::complex<double> t) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& pt : points) best = std::min(best, std::abs(t - pt.center) - pt.radius);
  return best;
}

int SingularSet::containing(std::complex<double> t) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (std::abs(t - points[i].center) <= points[i].radius) return static_cast<int>(i);
  return -1;
}

SingularSet singular_set(const ProblemSpec& spec, const ConnectionMatrix& a, int digits) {
  spec.validate();
  SingularSet out;
  auto add = [&](const TPoly& poly, Provenance prov) {
    if (poly.is_zero()) throw Error(ErrorCode::DegenerateFamily, "defining polynomial vanishes identically (" + to_string(prov) + ")");
    const TPoly prim = poly.primitive();
    for (const auto& d : out.defining)
      if (d.poly == prim && d.provenance == prov) return;
    out.defining.push_back({prim, prov});
  };

  const LaurentPoly dg = partial(spec.g, Variable::U);
  // Critical-point polynomial with nonzero constant term on the punctured line.
  const LaurentPoly crit = spec.fiber == FiberType::PuncturedLine ? dg.shifted(-dg.min_u_exponent()) : dg;
  add(spec.g.coeff(spec.g.max_u_exponent()), Provenance::LeadingCoeffVanishes);
  if (spec.fiber == FiberType::PuncturedLine) {
    if (spec.pole_order() >= 1) {
      add(spec.g.coeff(spec.g.min_u_exponent()), Provenance::LeadingCoeffVanishes);
    } else {
      add(crit.coeff(0), Provenance::CriticalPointDegeneration);
    }
  }
  if (crit.max_u_exponent() >= 1) add(discriminant_resultant(crit), Provenance::CriticalPointDegeneration);
  for (const auto& row : a.a)
    for (const auto& entry : row)
      if (entry.den().degree() >= 1) add(entry.den(), Provenance::ConnectionPole);

  // Isolate, then cluster overlapping balls (union-find on overlap).
  std::vector<SingularPoint> raw;
  for (const auto& d : out.defining)
    for (const auto& ball : root_isolate(d.poly, digits)) raw.push_back({ball.center, ball.radius, {d.provenance}});
  std::vector<std::size_t> parent(raw.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (std::size_t j = i + 1; j < raw.size(); ++j)
      if (std::abs(raw[i].center - raw[j].center) <= raw[i].radius + raw[j].radius) parent[find(i)] = find(j);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (find(i) != i) continue;
    SingularPoint merged = raw[i];
    for (std::size_t j = 0; j < raw.size(); ++j) {
      if (j == i || find(j) != i) continue;
      merged.radius = std::max(merged.radius, std::abs(raw[j].center - merged.center) + raw[j].radius);
      merged.provenance.insert(merged.provenance.end(), raw[j].provenance.begin(), raw[j].provenance.end());
    }
    std::sort(merged.provenance.begin(), merged.provenance.end());
    merged.provenance.erase(std::unique(merged.provenance.begin(), merged.provenance.end()), merged.provenance.end());
    out.points.push_back(std::move(merged));
  }
  std::sort(out.points.begin(), out.points.end(), [](const SingularPoint& x, const SingularPoint& y) {
    if (x.center.real() != y.center.real()) return x.center.real() < y.center.real();
    return x.center.imag() < y.center.imag();
  });
  return out;
}

}  // namespace expgm
