#include "expgm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "expgm/error.hpp"
#include "numeric_internal.hpp"

namespace expgm {

namespace {

using detail::ComplexT;

// Integrand P(u) e^{g_t(u)} (or its modulus) with coefficients frozen at t.
template <class Real>
class Integrand {
 public:
  using Cx = ComplexT<Real>;

  Integrand(const ProblemSpec& spec, const LaurentPoly& form, std::complex<double> t) {
    const Cx tc = detail::to_complex<Real>(t);
    for (const auto& [k, c] : spec.g.terms()) g_.emplace_back(k, detail::eval_tpoly<Real>(c, tc));
    for (const auto& [k, c] : form.terms()) p_.emplace_back(k, detail::eval_tpoly<Real>(c, tc));
  }

  Cx g(const Cx& u) const { return laurent(g_, u); }
  Cx p(const Cx& u) const { return laurent(p_, u); }
  Cx operator()(const Cx& u) const {
    using std::exp;
    return p(u) * exp(g(u));
  }

  Cx dg(const Cx& u) const {
    Cx acc(0);
    for (const auto& [k, c] : g_)
      if (k != 0) acc += c * Cx(Real(k)) * power(u, k - 1);
    return acc;
  }

 private:
  static Cx power(const Cx& u, int k) {
    Cx base = k < 0 ? Cx(1) / u : u;
    Cx out(1);
    for (int n = std::abs(k); n > 0; n >>= 1) {
      if (n & 1) out *= base;
      base *= base;
    }
    return out;
  }

  static Cx laurent(const std::vector<std::pair<int, Cx>>& terms, const Cx& u) {
    Cx acc(0);
    for (const auto& [k, c] : terms) acc += c * power(u, k);
    return acc;
  }

  std::vector<std::pair<int, Cx>> g_;
  std::vector<std::pair<int, Cx>> p_;
};

template <class Real>
struct Interval {
  ComplexT<Real> a;
  ComplexT<Real> b;
  ComplexT<Real> value;
  Real error;
};

template <class Real>
struct ByError {
  bool operator()(const Interval<Real>& x, const Interval<Real>& y) const { return x.error < y.error; }
};

template <class Real>
struct QuadResult {
  std::complex<double> value;
  double error = 0.0;
  double truncation = 0.0;
  bool converged = false;
};

template <class Real>
QuadResult<Real> integrate(const RapidDecayCycle& cycle, const Integrand<Real>& f, double tol, double abs_floor,
                           int max_intervals, bool modulus) {
  using Cx = ComplexT<Real>;
  using std::abs;
  using std::real;
  using std::exp;
  const auto& xk = boost::math::quadrature::gauss_kronrod<Real, 15>::abscissa();
  const auto& wk = boost::math::quadrature::gauss_kronrod<Real, 15>::weights();
  const auto& wg = boost::math::quadrature::gauss<Real, 7>::weights();

  auto rule = [&](const Cx& a, const Cx& b) {
    const Cx mid = (a + b) / Real(2);
    const Cx half = (b - a) / Real(2);
    const Real jac = abs(half);
    auto value_at = [&](const Cx& u) { return modulus ? Cx(abs(f(u)) * jac) : f(u) * half; };
    Cx kron = value_at(mid) * Cx(wk[0]);
    Cx gauss = value_at(mid) * Cx(wg[0]);
    for (std::size_t i = 1; i < xk.size(); ++i) {
      const Cx dx = half * Cx(xk[i]);
      const Cx s = value_at(mid + dx) + value_at(mid - dx);
      kron += s * Cx(wk[i]);
      if (i % 2 == 0) gauss += s * Cx(wg[i / 2]);
    }
    return Interval<Real>{a, b, kron, Real(abs(kron - gauss))};
  };

  std::priority_queue<Interval<Real>, std::vector<Interval<Real>>, ByError<Real>> queue;
  const int presplit = 4;
  for (std::size_t k = 0; k + 1 < cycle.nodes.size(); ++k) {
    const Cx a = detail::to_complex<Real>(cycle.nodes[k]);
    const Cx b = detail::to_complex<Real>(cycle.nodes[k + 1]);
    for (int s = 0; s < presplit; ++s) {
      const Cx lo = a + (b - a) * Cx(Real(s) / presplit);
      const Cx hi = a + (b - a) * Cx(Real(s + 1) / presplit);
      queue.push(rule(lo, hi));
    }
  }

  QuadResult<Real> out;
  auto totals = [&](Cx& value, Real& error) {
    value = Cx(0);
    error = 0;
    auto copy = queue;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
  };
  Cx value;
  Real error;
  totals(value, error);
  Cx running_value = value;
  Real running_error = error;
  while (running_error > Real(tol) * abs(running_value) + Real(abs_floor)) {
    if (static_cast<int>(queue.size()) >= max_intervals) break;
    const Interval<Real> worst = queue.top();
    queue.pop();
    const Cx mid = (worst.a + worst.b) / Real(2);
    const Interval<Real> left = rule(worst.a, mid);
    const Interval<Real> right = rule(mid, worst.b);
    running_value += left.value + right.value - worst.value;
    running_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    // Periodically resum to avoid drift in the running totals.
    if (queue.size() % 512 == 0) totals(running_value, running_error);
  }
  totals(value, error);
  out.value = detail::to_double<Real>(value);
  out.error = static_cast<double>(error);

  // Valley tails beyond the truncation radii: Laplace-type bound
  // |f(u_R)| / |d Re g / ds| along the outward direction.
  auto tail = [&](const Cx& end, const Cx& inner, bool at_zero) -> double {
    const Cx dir = (end - inner) / Cx(abs(end - inner));
    const Real re = real(f.g(end));
    const Real slope = real(f.dg(end) * dir);
    if (re >= 0 || slope >= 0) throw Error(ErrorCode::NonDecayingTail, "integrand does not decay on a valley tail");
    const Real mag = abs(f.p(end)) * exp(re);
    if (at_zero) return static_cast<double>(2 * mag * abs(end));
    return static_cast<double>(2 * mag / abs(slope));
  };
  if (!cycle.closed && cycle.nodes.size() >= 2) {
    const auto n = cycle.nodes.size();
    const Cx first = detail::to_complex<Real>(cycle.nodes[0]);
    const Cx second = detail::to_complex<Real>(cycle.nodes[1]);
    const Cx last = detail::to_complex<Real>(cycle.nodes[n - 1]);
    const Cx before = detail::to_complex<Real>(cycle.nodes[n - 2]);
    if (cycle.start.kind != EndKind::Interior) out.truncation += tail(first, second, cycle.start.kind == EndKind::ValleyZero);
    if (cycle.finish.kind != EndKind::Interior) out.truncation += tail(last, before, cycle.finish.kind == EndKind::ValleyZero);
  }
  out.converged = out.error + out.truncation <= tol * std::abs(out.value) + abs_floor;
  return out;
}

template <class Real>
PeriodValue run(const RapidDecayCycle& cycle, const LaurentPoly& form, const ProblemSpec& spec, std::complex<double> t,
                double tol, const QuadratureOptions& options) {
  const Integrand<Real> f(spec, form, t);
  const auto r = integrate<Real>(cycle, f, tol, options.abs_floor, options.max_intervals, false);
  if (!r.converged)
    throw Error(ErrorCode::ToleranceNotMet, "quadrature error " + std::to_string(r.error + r.truncation) +
                                                " exceeds the requested tolerance");
  return PeriodValue{r.value, r.error, r.truncation};
}

}  // namespace

Eigen::MatrixXcd PeriodMatrix::values() const {
  const auto n = static_cast<Eigen::Index>(entries.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value;
  return m;
}

PeriodValue integrate_period(const RapidDecayCycle& cycle, const LaurentPoly& form, const ProblemSpec& spec,
                             std::complex<double> t, double tol, const QuadratureOptions& options) {
  if (options.precision == Precision::Extended)
    return run<detail::mp::cpp_bin_float_50>(cycle, form, spec, t, tol, options);
  return run<double>(cycle, form, spec, t, tol, options);
}

PeriodValue integrate_period(const RapidDecayCycle& cycle, int exponent, const ProblemSpec& spec, std::complex<double> t,
                             double tol, const QuadratureOptions& options) {
  return integrate_period(cycle, LaurentPoly::u_power(exponent), spec, t, tol, options);
}

double absolute_integral(const RapidDecayCycle& cycle, const LaurentPoly& form, const ProblemSpec& spec,
                         std::complex<double> t, double tol) {
  const Integrand<double> f(spec, form, t);
  const auto r = integrate<double>(cycle, f, tol, 0.0, 40000, true);
  return r.value.real() + r.truncation;
}

PeriodMatrix period_matrix(const ProblemSpec& spec, std::complex<double> t, const CycleBasis& cycles,
                           const CohomologyBasis& basis, double tol, const QuadratureOptions& options) {
  if (cycles.cycles.size() != static_cast<std::size_t>(basis.rank))
    throw std::invalid_argument("period_matrix: cycle count differs from the cohomology rank");
  PeriodMatrix out;
  out.t = t;
  for (const auto& c : cycles.cycles) {
    std::vector<PeriodValue> row;
    for (int e : basis.exponents) {
      try {
        row.push_back(integrate_period(c, e, spec, t, tol, options));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::ToleranceNotMet || options.abs_floor > 0) throw;
        // Entry cancels to (nearly) zero: measure against the integrand scale.
        QuadratureOptions floored = options;
        floored.abs_floor = tol * absolute_integral(c, LaurentPoly::u_power(e), spec, t);
        row.push_back(integrate_period(c, e, spec, t, tol, floored));
      }
    }
    out.entries.push_back(std::move(row));
  }
  return out;
}

}  // namespace expgm
