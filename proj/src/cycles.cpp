#include "expgm/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "expgm/error.hpp"

namespace expgm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

std::complex<double> polar(double r, double angle) { return std::polar(r, angle); }

double coefficient_scale(const TPoly& p, std::complex<double> t) {
  double s = 0;
  double tp = 1;
  for (const auto& c : p.coefficients()) {
    s += std::abs(c.get_d()) * tp;
    tp *= std::abs(t);
  }
  return s;
}

std::complex<double> checked_lc(const TPoly& p, std::complex<double> t) {
  const std::complex<double> v = p.eval(t);
  if (std::abs(v) <= 1e-12 * coefficient_scale(p, t))
    throw Error(ErrorCode::AtSingularT, "leading coefficient " + p.to_string() + " vanishes at the requested t");
  return v;
}

std::vector<Sector> sectors(std::complex<double> lc, int degree, bool at_zero) {
  std::vector<Sector> out;
  for (int j = 0; j < degree; ++j) {
    // At infinity: arg(lc) + d*theta = pi; at zero: arg(lc) - e*phi = pi.
    const double raw = at_zero ? (std::arg(lc) - kPi + kTwoPi * j) / degree : (kPi - std::arg(lc) + kTwoPi * j) / degree;
    out.push_back({wrap_angle(raw), kPi / (2.0 * degree), degree, lc});
  }
  std::sort(out.begin(), out.end(), [](const Sector& a, const Sector& b) { return a.center < b.center; });
  return out;
}

double re_g(const ProblemSpec& spec, std::complex<double> t, std::complex<double> u) { return spec.g.eval(t, u).real(); }

// Smallest R with |lc| R^d / 2 >= -log(tol) + d log R + margin, then pushed
// out until |e^{g_t}| < tol at the terminal node.
double infinity_radius(const ProblemSpec& spec, std::complex<double> t, double angle, double inner, const CycleOptions& opt) {
  const int d = spec.top_degree();
  const double lc = std::abs(spec.g.coeff(spec.g.max_u_exponent()).eval(t));
  const double target = -std::log(opt.truncation_tol) + opt.margin;
  double r = 1.0;
  while (lc * std::pow(r, d) / 2 < target + d * std::log(r)) r *= 1.02;
  r = std::max(r, 2 * inner);
  for (int i = 0; i < 200 && re_g(spec, t, polar(r, angle)) > std::log(opt.truncation_tol); ++i) r *= 1.1;
  if (re_g(spec, t, polar(r, angle)) > std::log(opt.truncation_tol))
    throw Error(ErrorCode::NonDecayingTail, "no decay found along the valley at infinity");
  return r;
}

double zero_radius(const ProblemSpec& spec, std::complex<double> t, double angle, double inner, const CycleOptions& opt) {
  const int e = spec.pole_order();
  const double lc = std::abs(spec.g.coeff(spec.g.min_u_exponent()).eval(t));
  const double target = -std::log(opt.truncation_tol) + opt.margin;
  double r = 1.0;
  while (lc * std::pow(r, -e) / 2 < target + e * std::abs(std::log(r))) r /= 1.02;
  r = std::min(r, inner / 2);
  for (int i = 0; i < 200 && re_g(spec, t, polar(r, angle)) > std::log(opt.truncation_tol); ++i) r /= 1.1;
  if (re_g(spec, t, polar(r, angle)) > std::log(opt.truncation_tol))
    throw Error(ErrorCode::NonDecayingTail, "no decay found along the valley at zero");
  return r;
}

double interior_radius(const ProblemSpec& spec, std::complex<double> t) {
  const auto crit = critical_points(spec, t);
  if (spec.fiber == FiberType::AffineLine) {
    double m = 0;
    for (auto c : crit) m = std::max(m, std::abs(c));
    return 1 + m;
  }
  if (crit.empty()) return 1.0;
  double lo = std::abs(crit.front());
  double hi = lo;
  for (auto c : crit) {
    lo = std::min(lo, std::abs(c));
    hi = std::max(hi, std::abs(c));
  }
  return std::sqrt(lo * hi);
}

void append_arc(std::vector<std::complex<double>>& nodes, double radius, double from, double to) {
  const int n = std::max(2, static_cast<int>(std::ceil(std::abs(to - from) / (kPi / 16))));
  for (int k = 1; k < n; ++k) nodes.push_back(polar(radius, from + (to - from) * k / n));
}

}  // namespace

std::string to_string(EndKind kind) {
  switch (kind) {
    case EndKind::Interior: return "Interior";
    case EndKind::ValleyInfinity: return "ValleyInfinity";
    case EndKind::ValleyZero: return "ValleyZero";
  }
  return "";
}

EndKind parse_end_kind(const std::string& text) {
  for (auto k : {EndKind::Interior, EndKind::ValleyInfinity, EndKind::ValleyZero})
    if (to_string(k) == text) return k;
  throw Error(ErrorCode::ParseError, "unknown end tag '" + text + "'");
}

std::vector<std::complex<double>> critical_points(const ProblemSpec& spec, std::complex<double> t) {
  const LaurentPoly dg = partial(spec.g, Variable::U);
  const LaurentPoly p = dg.shifted(-dg.min_u_exponent());
  const int n = p.max_u_exponent();
  if (n < 1) return {};
  const std::complex<double> lead = p.coeff(n).eval(t);
  if (lead == 0.0) throw Error(ErrorCode::AtSingularT, "critical-point polynomial drops degree");
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i).eval(t) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> z = solver.eigenvalues()(i);
    if (spec.fiber == FiberType::PuncturedLine && std::abs(z) < 1e-300) continue;
    out.push_back(z);
  }
  return out;
}

ValleyConfig valley_config(const ProblemSpec& spec, std::complex<double> t) {
  spec.validate();
  ValleyConfig cfg;
  cfg.t = t;
  const int d = spec.g.max_u_exponent();
  if (d >= 1) cfg.at_infinity = sectors(checked_lc(spec.g.coeff(d), t), d, false);
  if (spec.fiber == FiberType::PuncturedLine && spec.pole_order() >= 1)
    cfg.at_zero = sectors(checked_lc(spec.g.coeff(spec.g.min_u_exponent()), t), spec.pole_order(), true);
  return cfg;
}

RapidDecayCycle realize_cycle(const ProblemSpec& spec, std::complex<double> t, const EndTag& start, const EndTag& finish,
                              bool closed, const CycleOptions& options) {
  RapidDecayCycle c;
  c.start = start;
  c.finish = finish;
  c.closed = closed;
  c.interior_radius = interior_radius(spec, t);
  const double rho = c.interior_radius;
  if (closed) {
    const int n = 64;
    for (int k = 0; k < n; ++k) c.nodes.push_back(polar(rho, kTwoPi * k / n));
    c.nodes.push_back(c.nodes.front());
    return c;
  }
  auto end_radius = [&](const EndTag& tag) {
    if (tag.kind == EndKind::ValleyInfinity) {
      c.r_infinity = std::max(c.r_infinity, infinity_radius(spec, t, tag.angle, rho, options));
      return c.r_infinity;
    }
    if (tag.kind == EndKind::ValleyZero) {
      const double r = zero_radius(spec, t, tag.angle, rho, options);
      c.r_zero = c.r_zero == 0.0 ? r : std::min(c.r_zero, r);
      return c.r_zero;
    }
    throw std::invalid_argument("open cycle ends must be valley-tagged");
  };
  // Both ends of one cycle share the truncation radii.
  end_radius(start);
  end_radius(finish);
  auto outer = [&](const EndTag& tag) { return tag.kind == EndKind::ValleyInfinity ? c.r_infinity : c.r_zero; };

  c.nodes.push_back(polar(outer(start), start.angle));
  c.nodes.push_back(polar(rho, start.angle));
  if (spec.fiber == FiberType::PuncturedLine) append_arc(c.nodes, rho, start.angle, finish.angle);
  c.nodes.push_back(polar(rho, finish.angle));
  c.nodes.push_back(polar(outer(finish), finish.angle));

  for (const auto* tag : {&start, &finish}) {
    const double r = outer(*tag);
    if (re_g(spec, t, polar(r, tag->angle)) >= 0)
      throw Error(ErrorCode::NonDecayingTail, "valley end does not decay");
  }
  return c;
}

CycleBasis cycle_basis(const ProblemSpec& spec, std::complex<double> t, const ValleyConfig& cfg, const CycleOptions& options) {
  const CohomologyBasis cohom = fiber_basis(spec);
  CycleBasis out;
  out.t = t;
  if (cohom.rank == 0) return out;
  const auto& inf = cfg.at_infinity;
  const auto& zero = cfg.at_zero;
  const int d = static_cast<int>(inf.size());
  const int e = static_cast<int>(zero.size());

  auto tag = [](EndKind kind, int index, double angle) { return EndTag{kind, index, angle}; };
  // Adjacent valleys joined counterclockwise; the first path wraps around.
  auto adjacent = [&](const std::vector<Sector>& s, EndKind kind, int j) {
    const int n = static_cast<int>(s.size());
    const int prev = (j + n - 1) % n;
    const double from = j == 0 ? s[static_cast<std::size_t>(prev)].center - kTwoPi : s[static_cast<std::size_t>(prev)].center;
    return realize_cycle(spec, t, tag(kind, prev, from), tag(kind, j, s[static_cast<std::size_t>(j)].center), false, options);
  };
  for (int j = 0; j + 1 < d; ++j) out.cycles.push_back(adjacent(inf, EndKind::ValleyInfinity, j));
  if (spec.fiber == FiberType::PuncturedLine) {
    for (int j = 0; j + 1 < e; ++j) out.cycles.push_back(adjacent(zero, EndKind::ValleyZero, j));
    out.cycles.push_back(realize_cycle(spec, t, EndTag{}, EndTag{}, true, options));
    if (d >= 1 && e >= 1)
      out.cycles.push_back(realize_cycle(spec, t, tag(EndKind::ValleyZero, 0, zero.front().center),
                                         tag(EndKind::ValleyInfinity, 0, inf.front().center), false, options));
  }
  if (static_cast<int>(out.cycles.size()) != cohom.rank)
    throw std::logic_error("cycle_basis: cycle count does not match the cohomology rank");
  return out;
}

namespace {

double segment_distance(std::complex<double> a, std::complex<double> b, std::complex<double> p) {
  const std::complex<double> ab = b - a;
  const double len2 = std::norm(ab);
  double s = len2 == 0 ? 0.0 : ((p - a) * std::conj(ab)).real() / len2;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(a + s * ab - p);
}

struct Phases {
  std::complex<double> inf;
  std::complex<double> zero;
};

}  // namespace

CycleBasis track_cycles(const ProblemSpec& spec, const CycleBasis& basis, std::span<const std::complex<double>> path,
                        const SingularSet& sigma, const CycleOptions& options) {
  if (path.empty() || std::abs(path.front() - basis.t) > 1e-12 * std::max(1.0, std::abs(basis.t)))
    throw std::invalid_argument("track_cycles: path must start at the basis parameter");
  const int d = spec.g.max_u_exponent();
  const int e = spec.fiber == FiberType::PuncturedLine ? spec.pole_order() : 0;
  const TPoly lc_inf = d >= 1 ? spec.g.coeff(d) : TPoly{};
  const TPoly lc_zero = e >= 1 ? spec.g.coeff(spec.g.min_u_exponent()) : TPoly{};

  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    for (const auto& pt : sigma.points)
      if (segment_distance(path[k], path[k + 1], pt.center) <= pt.radius + 1e-10)
        throw Error(ErrorCode::SingularProximity, "tracking path passes through a singular ball");

  auto phases = [&](std::complex<double> t) {
    Phases p;
    if (d >= 1) p.inf = checked_lc(lc_inf, t);
    if (e >= 1) p.zero = checked_lc(lc_zero, t);
    return p;
  };

  double shift_inf = 0.0;  // accumulated change of arg lc at infinity
  double shift_zero = 0.0;
  std::complex<double> current = path.front();
  Phases here = phases(current);
  // Each accepted step moves a valley center by at most a quarter of the
  // sector width, well below the half-width needed to swap neighbors.
  const double max_turn = kPi / 4;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const std::complex<double> target = path[k];
    double done = 0.0;
    double step = 1.0;
    while (done < 1.0) {
      const double next_s = std::min(1.0, done + step);
      const std::complex<double> next = path[k - 1] + next_s * (target - path[k - 1]);
      const Phases there = phases(next);
      const double din = d >= 1 ? std::arg(there.inf / here.inf) : 0.0;
      const double dze = e >= 1 ? std::arg(there.zero / here.zero) : 0.0;
      if (std::abs(din) > max_turn || std::abs(dze) > max_turn) {
        step /= 2;
        if (step < 1e-14) throw Error(ErrorCode::StepCollision, "valley directions rotate too fast to follow");
        continue;
      }
      shift_inf += din;
      shift_zero += dze;
      here = there;
      current = next;
      done = next_s;
      step = std::min(1.0, step * 2);
    }
  }

  CycleBasis out;
  out.t = path.back();
  for (const auto& c : basis.cycles) {
    auto moved = [&](EndTag tag) {
      if (tag.kind == EndKind::ValleyInfinity) tag.angle -= shift_inf / d;
      if (tag.kind == EndKind::ValleyZero) tag.angle += shift_zero / e;
      return tag;
    };
    out.cycles.push_back(realize_cycle(spec, out.t, moved(c.start), moved(c.finish), c.closed, options));
  }
  return out;
}

}  // namespace expgm
