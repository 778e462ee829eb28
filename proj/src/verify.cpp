#include "expgm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/float128.hpp>
#include <boost/numeric/odeint.hpp>

#include "expgm/error.hpp"
#include "numeric_internal.hpp"

// odeint treats any type with a value_type member as a container; the
// multiprecision scalar has one, so pin it down explicitly.
namespace boost::numeric::odeint::detail {
template <>
struct extract_value_type<boost::multiprecision::float128, void> {
  using type = boost::multiprecision::float128;
};
}  // namespace boost::numeric::odeint::detail

namespace expgm {

namespace {

using cplx = std::complex<double>;
using Quad = boost::multiprecision::float128;
using nlohmann::json;

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

CheckRecord vacuous(const std::string& name, cplx t, double threshold, const std::string& relation) {
  CheckRecord r;
  r.name = name;
  r.inputs = {{"t", complex_json(t)}};
  r.threshold = threshold;
  r.relation = relation;
  r.pass = true;
  r.details = {{"note", "rank zero: vacuous"}};
  return r;
}

void require_admissible(const Model& model, cplx t) {
  if (!model.sigma.admissible(t))
    throw Error(ErrorCode::SingularProximity, "parameter lies inside a singular ball");
}

// Max over cycles of |Y' - A Y| / |Y| where Y is a row of P.
double ode_residual(const Eigen::MatrixXcd& deriv, const Eigen::MatrixXcd& p, const Eigen::MatrixXcd& a) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const Eigen::VectorXcd y = p.row(i).transpose();
    const Eigen::VectorXcd dy = deriv.row(i).transpose();
    worst = std::max(worst, (dy - a * y).norm() / y.norm());
  }
  return worst;
}

}  // namespace

bool VerificationReport::overall() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

PeriodSnapshot periods_at(const Model& model, cplx t, double tol, const QuadratureOptions& quad) {
  require_admissible(model, t);
  PeriodSnapshot s;
  s.cycles = cycle_basis(model.spec, t, valley_config(model.spec, t));
  s.periods = period_matrix(model.spec, t, s.cycles, model.basis, tol, quad);
  return s;
}

PeriodSnapshot periods_tracked(const Model& model, const CycleBasis& from, std::span<const cplx> path, double tol,
                               const QuadratureOptions& quad) {
  PeriodSnapshot s;
  s.cycles = track_cycles(model.spec, from, path, model.sigma);
  s.periods = period_matrix(model.spec, s.cycles.t, s.cycles, model.basis, tol, quad);
  return s;
}

CheckRecord check_ode(const Model& model, cplx t, const VerifyOptions& options) {
  if (model.rank() == 0) return vacuous("ode_residual", t, options.ode_tol, "<");
  require_admissible(model, t);
  const double h = std::min(options.fd_step, model.sigma.distance(t) / 4);
  const PeriodSnapshot base = periods_at(model, t, options.quad_tol);
  auto shifted = [&](cplx delta) -> Eigen::MatrixXcd {
    const std::array<cplx, 2> path{t, t + delta};
    return periods_tracked(model, base.cycles, path, options.quad_tol).periods.values();
  };
  const cplx i(0.0, 1.0);
  auto stencil = [&](double step) -> Eigen::MatrixXcd {
    return ((shifted(step) - shifted(-step)) - i * (shifted(i * step) - shifted(-i * step))) / (4.0 * step);
  };
  const Eigen::MatrixXcd d1 = stencil(h);
  const Eigen::MatrixXcd d2 = stencil(h / 2);
  const Eigen::MatrixXcd deriv = (16.0 * d2 - d1) / 15.0;
  const Eigen::MatrixXcd a = model.connection_at(t);
  const double residual = ode_residual(deriv, base.periods.values(), a);

  CheckRecord r;
  r.name = "ode_residual";
  r.inputs = {{"t", complex_json(t)}, {"h", h}, {"quad_tol", options.quad_tol}};
  r.measured = residual;
  r.threshold = options.ode_tol;
  r.pass = residual < options.ode_tol;
  r.details = {{"unextrapolated_residual", ode_residual(d2, base.periods.values(), a)}};
  return r;
}

std::vector<double> ode_convergence_orders(const Model& model, cplx t, double h0, const VerifyOptions& options) {
  if (model.rank() == 0) return {};
  require_admissible(model, t);
  h0 = std::min(h0, model.sigma.distance(t) / 2);
  const PeriodSnapshot base = periods_at(model, t, options.quad_tol);
  const Eigen::MatrixXcd a = model.connection_at(t);
  auto residual = [&](double h) {
    const std::array<cplx, 2> fwd{t, t + h};
    const std::array<cplx, 2> bwd{t, t - h};
    const Eigen::MatrixXcd d = (periods_tracked(model, base.cycles, fwd, options.quad_tol).periods.values() -
                                periods_tracked(model, base.cycles, bwd, options.quad_tol).periods.values()) /
                               (2.0 * h);
    return ode_residual(d, base.periods.values(), a);
  };
  const double r0 = residual(h0);
  const double r1 = residual(h0 / 2);
  const double r2 = residual(h0 / 4);
  return {std::log2(r0 / r1), std::log2(r1 / r2)};
}

CheckRecord check_stokes(const Model& model, cplx t, const RapidDecayCycle& cycle, const LaurentPoly& q,
                         const VerifyOptions& options) {
  CheckRecord r;
  r.name = "stokes";
  r.inputs = {{"t", complex_json(t)}, {"Q", q.to_string()}};
  r.threshold = options.stokes_tol;
  if (q.is_zero()) {
    r.pass = true;
    return r;
  }
  const double scale = absolute_integral(cycle, q, model.spec, t);
  QuadratureOptions quad;
  quad.abs_floor = 1e-13 * scale;
  const PeriodValue v = integrate_period(cycle, twisted_differential(model.spec, q), model.spec, t, 1e-12, quad);
  r.measured = std::abs(v.value) / scale;
  r.pass = r.measured < options.stokes_tol;
  r.details = {{"integral", complex_json(v.value)}, {"scale", scale}};
  return r;
}

CheckRecord check_duality(const Model& model, cplx t, const VerifyOptions& options) {
  if (model.rank() == 0) {
    CheckRecord r = vacuous("duality", t, options.duality_floor, ">");
    r.measured = 1.0;  // empty determinant
    return r;
  }
  const PeriodSnapshot s = periods_at(model, t, options.quad_tol);
  const Eigen::MatrixXcd p = s.periods.values();
  const double det = std::abs(p.determinant());
  double log_gm = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) log_gm += std::log(p.row(i).norm());
  const double threshold = options.duality_floor * std::exp(log_gm);  // (geometric mean)^r
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(p);
  const auto& sv = svd.singularValues();
  CheckRecord r;
  r.name = "duality";
  r.inputs = {{"t", complex_json(t)}, {"floor", options.duality_floor}};
  r.measured = det;
  r.threshold = threshold;
  r.relation = ">";
  r.pass = det > threshold;
  r.details = {{"condition_number", sv(0) / sv(sv.size() - 1)}, {"periods", matrix_json(p)}};
  return r;
}

CheckRecord check_period_rank(const Model& model, cplx t, const VerifyOptions& options) {
  CheckRecord r;
  r.name = "period_rank";
  r.inputs = {{"t", complex_json(t)}, {"symbolic_rank", model.rank()}};
  r.threshold = model.rank();
  r.relation = "=";
  if (model.rank() == 0) {
    r.pass = true;
    return r;
  }
  const Eigen::MatrixXcd p = periods_at(model, t, options.quad_tol).periods.values();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(p);
  const auto& sv = svd.singularValues();
  int numeric_rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-8 * sv(0)) ++numeric_rank;
  r.measured = numeric_rank;
  r.pass = numeric_rank == model.rank();
  return r;
}

namespace {

template <class Real>
struct Cx {
  Real re{0};
  Real im{0};
  Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
  Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
  Cx operator*(const Cx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  Cx operator/(const Cx& o) const {
    const Real d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
};

template <class Real>
Cx<Real> to_cx(cplx z) {
  return {Real(z.real()), Real(z.imag())};
}

template <class Real>
Real from_rational(const Rational& q) {
  if constexpr (std::is_same_v<Real, double>) return q.get_d();
  else if constexpr (std::is_same_v<Real, Quad>) return Quad(detail::to_real<detail::mp::cpp_bin_float_50>(q));
  else return detail::to_real<Real>(q);
}

// Connection entries with coefficients converted once to the working type.
template <class Real>
struct WorkingConnection {
  std::vector<std::vector<Real>> num;
  std::vector<std::vector<Real>> den;

  explicit WorkingConnection(const ConnectionMatrix& a) {
    auto convert = [](const TPoly& p) {
      std::vector<Real> c;
      for (const auto& q : p.coefficients()) c.push_back(from_rational<Real>(q));
      return c;
    };
    for (const auto& row : a.a)
      for (const auto& f : row) {
        num.push_back(convert(f.num()));
        den.push_back(convert(f.den()));
      }
  }

  static Cx<Real> horner(const std::vector<Real>& c, const Cx<Real>& t) {
    Cx<Real> acc;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + Cx<Real>{*it, Real(0)};
    return acc;
  }

  Cx<Real> entry(std::size_t k, const Cx<Real>& t) const { return horner(num[k], t) / horner(den[k], t); }
};

struct Transport {
  Eigen::MatrixXcd phi;
  /// Largest condition number of the fundamental matrix seen along the path.
  double growth = 1.0;
};

Eigen::MatrixXcd unpack(const std::vector<double>& x, std::size_t r) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {x[2 * (i * r + j)], x[2 * (i * r + j) + 1]};
  return m;
}

// Fundamental matrix of Y' = A(t) Y along the polyline, state laid out as
// (re, im) of phi(i, j) at 2 * (i * r + j).
template <class Real>
Transport transport(const Model& model, std::span<const cplx> path, double tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<Real>;
  const auto r = static_cast<std::size_t>(model.rank());
  const WorkingConnection<Real> conn(model.connection);
  State phi(2 * r * r, Real(0));
  for (std::size_t i = 0; i < r; ++i) phi[2 * (i * r + i)] = 1;
  std::vector<Cx<Real>> m(r * r);
  Transport out;
  auto to_double = [&](const State& x) {
    std::vector<double> d(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) d[k] = static_cast<double>(x[k]);
    return d;
  };
  auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State, Real, State, Real>>(Real(tol), Real(tol));
  Real dt = Real(1e-2);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (path[k] == path[k + 1]) continue;
    const Cx<Real> a = to_cx<Real>(path[k]);
    const Cx<Real> ab = to_cx<Real>(path[k + 1]) - a;
    auto rhs = [&](const State& x, State& dx, const Real& s) {
      const Cx<Real> t = a + ab * Cx<Real>{s, Real(0)};
      for (std::size_t e = 0; e < r * r; ++e) m[e] = conn.entry(e, t) * ab;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          Cx<Real> acc;
          for (std::size_t l = 0; l < r; ++l) acc = acc + m[i * r + l] * Cx<Real>{x[2 * (l * r + j)], x[2 * (l * r + j) + 1]};
          dx[2 * (i * r + j)] = acc.re;
          dx[2 * (i * r + j) + 1] = acc.im;
        }
    };
    Real s = 0;
    while (s < 1) {
      if (s + dt > 1) dt = 1 - s;
      if (stepper.try_step(rhs, phi, s, dt) != odeint::success) {
        if (dt < Real(1e-14)) throw Error(ErrorCode::StepCollision, "ODE continuation step underflow");
        continue;
      }
      const Eigen::MatrixXcd now = unpack(to_double(phi), r);
      const auto sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(now).singularValues();
      out.growth = std::max(out.growth, sv(0) / sv(sv.size() - 1));
    }
  }
  out.phi = unpack(to_double(phi), r);
  return out;
}

// Double precision first; when the fundamental matrix becomes so
// ill-conditioned along the way that rounding would show up in the result,
// redo the transport in quad precision.
Eigen::MatrixXcd transport(const Model& model, std::span<const cplx> path) {
  const Transport fast = transport<double>(model, path, 1e-14);
  if (fast.growth < 1e4) return fast.phi;
  return transport<Quad>(model, path, std::clamp(1e-14 / fast.growth, 1e-30, 1e-18)).phi;
}

}  // namespace

MonodromyResult monodromy_along(const Model& model, std::span<const cplx> loop, const VerifyOptions& options) {
  if (loop.size() < 2 || std::abs(loop.front() - loop.back()) > 1e-12)
    throw std::invalid_argument("monodromy_along: loop must be closed");
  MonodromyResult out;
  CheckRecord& r = out.record;
  r.name = "monodromy";
  r.inputs = {{"basepoint", complex_json(loop.front())}, {"loop_points", loop.size()}};
  r.threshold = options.monodromy_tol;
  if (model.rank() == 0) {
    r.pass = true;
    r.details = {{"note", "rank zero: vacuous"}};
    return out;
  }
  for (std::size_t k = 0; k + 1 < loop.size(); ++k)
    for (const auto& pt : model.sigma.points) {
      const cplx ab = loop[k + 1] - loop[k];
      double s = std::norm(ab) == 0 ? 0.0 : ((pt.center - loop[k]) * std::conj(ab)).real() / std::norm(ab);
      s = std::clamp(s, 0.0, 1.0);
      if (std::abs(loop[k] + s * ab - pt.center) <= pt.radius + 1e-10)
        throw Error(ErrorCode::LoopHitsSingularity, "monodromy loop passes through a singular ball");
    }
  const PeriodSnapshot before = periods_at(model, loop.front(), options.quad_tol);
  const PeriodSnapshot after = periods_tracked(model, before.cycles, loop, options.quad_tol);
  const Eigen::MatrixXcd p0 = before.periods.values();
  const Eigen::MatrixXcd p1 = after.periods.values();
  const Eigen::MatrixXcd p0_inv = p0.inverse();
  out.from_cycles = p1 * p0_inv;
  // Rows of P are solution vectors: P_after^T = Phi P^T.
  const Eigen::MatrixXcd phi = transport(model, loop);
  out.from_ode = p0 * phi.transpose() * p0_inv;
  out.eigenvalues = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(out.from_cycles, false).eigenvalues();

  const double mismatch = (out.from_ode - out.from_cycles).norm() / out.from_ode.norm();
  const double det = std::abs(out.from_cycles.determinant());
  r.measured = mismatch;
  r.pass = mismatch < options.monodromy_tol && det > 1e-8;
  json eig = json::array();
  for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) eig.push_back(complex_json(out.eigenvalues(i)));
  r.details = {{"M_cycles", matrix_json(out.from_cycles)},
               {"M_ode", matrix_json(out.from_ode)},
               {"eigenvalues", eig},
               {"abs_det", det}};
  return out;
}

std::vector<cplx> loop_around(const Model& model, cplx center, cplx t0, int points) {
  const double base_dist = std::abs(t0 - center);
  if (base_dist == 0.0) throw Error(ErrorCode::LoopHitsSingularity, "basepoint coincides with the loop center");
  double others = std::numeric_limits<double>::infinity();
  double own = 0.0;
  for (const auto& pt : model.sigma.points) {
    const double dist = std::abs(pt.center - center);
    if (dist <= pt.radius) {
      own = std::max(own, pt.radius);
      continue;
    }
    others = std::min(others, dist - pt.radius);
  }
  const double radius = std::min(base_dist, others / 2);
  if (radius <= 2 * own) throw Error(ErrorCode::LoopHitsSingularity, "no room for a loop around the point");
  const cplx dir = (t0 - center) / base_dist;
  const cplx entry = center + radius * dir;
  std::vector<cplx> loop{t0};
  if (std::abs(entry - t0) > 1e-14) loop.push_back(entry);
  const double phase = std::arg(dir);
  for (int k = 1; k <= points; ++k)
    loop.push_back(center + std::polar(radius, phase + 2 * std::numbers::pi * k / points));
  loop.back() = entry;
  if (std::abs(entry - t0) > 1e-14) loop.push_back(t0);
  return loop;
}

MonodromyResult monodromy(const Model& model, std::size_t sigma_index, cplx t0, const VerifyOptions& options) {
  if (sigma_index >= model.sigma.points.size()) throw std::out_of_range("monodromy: singular point index out of range");
  const cplx center = model.sigma.points[sigma_index].center;
  const auto loop = loop_around(model, center, t0);
  MonodromyResult out = monodromy_along(model, loop, options);
  out.record.inputs["around"] = complex_json(center);
  out.record.inputs["sigma_index"] = sigma_index;
  return out;
}

LaurentPoly random_gauge(const ProblemSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> tdeg(0, 1);
  std::bernoulli_distribution keep(0.7);
  const int low = spec.fiber == FiberType::AffineLine ? 0 : -(spec.pole_order() + 2);
  const int high = spec.top_degree() + 2;
  LaurentPoly::Terms terms;
  for (int k = low; k <= high; ++k) {
    if (!keep(rng)) continue;
    std::vector<Rational> c(static_cast<std::size_t>(tdeg(rng)) + 1);
    for (auto& q : c) {
      q = Rational(num(rng), den(rng));
      q.canonicalize();
    }
    terms.emplace(k, TPoly(std::move(c)));
  }
  return LaurentPoly(std::move(terms));
}

VerificationReport verify_all(const Model& model, cplx t, const VerifyOptions& options) {
  VerificationReport report;
  report.label = model.spec.label;
  report.records.push_back(check_ode(model, t, options));
  if (model.rank() > 0) {
    const auto orders = ode_convergence_orders(model, t, 4 * options.fd_step, options);
    CheckRecord r;
    r.name = "ode_fd_order";
    r.inputs = {{"t", complex_json(t)}, {"h0", 4 * options.fd_step}};
    r.measured = std::min(orders[0], orders[1]);
    r.threshold = 1.8;
    r.relation = ">";
    r.pass = r.measured > r.threshold;
    r.details = {{"orders", orders}};
    report.records.push_back(r);
  }
  report.records.push_back(check_duality(model, t, options));
  report.records.push_back(check_period_rank(model, t, options));
  if (model.rank() > 0) {
    const PeriodSnapshot s = periods_at(model, t, options.quad_tol);
    for (std::size_t c = 0; c < s.cycles.cycles.size(); ++c) {
      for (int k = 0; k < options.stokes_samples; ++k) {
        const std::uint64_t seed = options.seed + 1000 * c + static_cast<std::uint64_t>(k);
        CheckRecord r = check_stokes(model, t, s.cycles.cycles[c], random_gauge(model.spec, seed), options);
        r.inputs["cycle"] = c;
        r.inputs["seed"] = seed;
        report.records.push_back(std::move(r));
      }
    }
    for (std::size_t i = 0; i < model.sigma.points.size(); ++i) report.records.push_back(monodromy(model, i, t, options).record);
  }
  return report;
}

}  // namespace expgm
