// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "expgm/cli.hpp"
#include "expgm/io.hpp"

using namespace expgm;
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

namespace {

const std::string fixtures = EXPGM_FIXTURE_DIR;
const std::vector<std::string> names{"airy", "bessel", "gaussian", "linear"};

Model load(const std::string& name) { return Model::build(load_spec_file(fixtures + "/" + name + ".spec").spec); }

struct Outcome {
  bool pass;
  std::string detail;
};

std::pair<int, json> cli_json(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, code == 0 ? json::parse(out.str()) : json()};
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Admissible points in the box [-2,2]^2 at distance >= 0.25 from the singular balls.
std::vector<cplx> sample_points(const Model& m, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::vector<cplx> out;
  while (static_cast<int>(out.size()) < count) {
    const cplx t(coord(rng), coord(rng));
    if (m.sigma.distance(t) >= 0.25) out.push_back(t);
  }
  return out;
}

// Hand reduction of the derived ODE, compared coefficientwise.
Outcome derivation(const std::string& name, const std::vector<std::string>& expect, const std::string& equation) {
  const auto [code, j] = cli_json({"derive", fixtures + "/" + name + ".spec"});
  const bool ok = code == 0 && j["rank"] == 2 && j["ode"]["coefficients"] == json(expect) &&
                  j["ode"]["equation"] == equation;
  return {ok, "r=" + (code == 0 ? j["rank"].dump() : "?") + ", ode " + (code == 0 ? j["ode"]["equation"].dump() : "?")};
}

Outcome c1() {
  // grad(1) = (u^2 - t) du, so [u^2] = t [1]: d[1] = -[u], d[u] = -t [1].
  Outcome o = derivation("airy", {"-t", "0", "1"}, "y'' - t*y");
  const auto [code, j] = cli_json({"derive", fixtures + "/airy.spec"});
  o.pass = o.pass && j["connection"] == json::array({json::array({"0", "-1"}), json::array({"-t", "0"})});
  return o;
}

Outcome c2() { return derivation("bessel", {"t", "1", "t"}, "t*y'' + y' + t*y"); }

Outcome c3() {
  const Model m = load("airy");
  const CycleBasis cb = cycle_basis(m.spec, 0.0, valley_config(m.spec, 0.0));
  const auto& c = cb.cycles[0];
  const bool labels = std::abs(std::remainder(c.start.angle - 5 * pi / 3, 2 * pi)) < 1e-12 &&
                      std::abs(std::remainder(c.finish.angle - pi / 3, 2 * pi)) < 1e-12;
  const cplx v = integrate_period(c, 0, m.spec, 0.0, 1e-12).value;
  // Ai(0) = 3^{-2/3} / Gamma(2/3)
  const cplx oracle = 2 * pi * I * std::pow(3.0, -2.0 / 3) / std::tgamma(2.0 / 3);
  const double err = std::abs(v - oracle) / std::abs(oracle);
  return {labels && err < 1e-8, "rel err " + fmt(err)};
}

Outcome c4() {
  // J0(1) = sum (-1/4)^k / (k!)^2; alternating with decreasing terms, so the
  // remainder is bounded by the first omitted term.
  double j0 = 0.0;
  double term = 1.0;
  int k = 0;
  for (; std::abs(term) > 1e-18; ++k) {
    j0 += term;
    term *= -0.25 / ((k + 1.0) * (k + 1.0));
  }
  const double remainder = std::abs(term);
  const Model m = load("bessel");
  const CycleBasis cb = cycle_basis(m.spec, 1.0, valley_config(m.spec, 1.0));
  const cplx v = integrate_period(cb.cycles[0], -1, m.spec, 1.0, 1e-12).value;
  const double err = std::abs(v - 2 * pi * I * j0) / std::abs(2 * pi * j0);
  const bool ok = cb.cycles[0].closed && err + remainder < 1e-8 && std::abs(j0 - 0.7651976866) < 1e-10;
  return {ok, "rel err " + fmt(err) + ", series remainder " + fmt(remainder)};
}

Outcome c5() {
  const Model m = load("gaussian");
  const PeriodSnapshot start = periods_at(m, 1.0, 1e-13);
  double worst = std::abs(start.periods.entries[0][0].value - std::sqrt(pi)) / std::sqrt(pi);
  for (cplx t : {cplx(2.0), cplx(1.0, 1.0)}) {
    const std::array<cplx, 2> path{1.0, t};
    const cplx v = periods_tracked(m, start.cycles, path, 1e-13).periods.entries[0][0].value;
    const cplx oracle = std::sqrt(pi / t);
    worst = std::max(worst, std::abs(v - oracle) / std::abs(oracle));
  }
  return {worst < 1e-10, "max rel err " + fmt(worst)};
}

Outcome c6() {
  double worst = 0.0;
  double min_order = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (std::size_t f = 0; f < names.size(); ++f) {
    const Model m = load(names[f]);
    for (cplx t : sample_points(m, 3, 600 + f)) {
      const CheckRecord r = check_ode(m, t);
      ok = ok && r.pass;
      worst = std::max(worst, r.measured);
      for (double o : ode_convergence_orders(m, t, 0.2)) {
        min_order = std::min(min_order, o);
        ok = ok && o > 1.8;
      }
    }
  }
  return {ok, "max residual " + fmt(worst) + ", min observed order " + fmt(min_order)};
}

Outcome c7() {
  bool ok = true;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < names.size(); ++f) {
    const Model m = load(names[f]);
    for (cplx t : sample_points(m, 5, 700 + f)) {
      const CheckRecord d = check_duality(m, t);
      ok = ok && d.pass && check_period_rank(m, t).pass;
      if (m.rank() > 0) min_ratio = std::min(min_ratio, d.measured / d.threshold);
    }
  }
  return {ok, "min |det P| / floor " + fmt(min_ratio)};
}

Outcome c8() {
  bool ok = true;
  double worst = 0.0;
  int checks = 0;
  for (std::size_t f = 0; f < names.size(); ++f) {
    const Model m = load(names[f]);
    const cplx t = sample_points(m, 1, 800 + f)[0];
    const CycleBasis cb = cycle_basis(m.spec, t, valley_config(m.spec, t));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const LaurentPoly q = random_gauge(m.spec, 8000 + seed);
      for (const auto& c : cb.cycles) {
        const CheckRecord r = check_stokes(m, t, c, q);
        ok = ok && r.pass;
        worst = std::max(worst, r.measured);
        ++checks;
      }
    }
  }
  return {ok, std::to_string(checks) + " integrals, max normalized " + fmt(worst)};
}

Outcome c9() {
  const Model bessel = load("bessel");
  const MonodromyResult b = monodromy(bessel, 0, 1.0);
  double eig = 0.0;
  for (Eigen::Index i = 0; i < b.eigenvalues.size(); ++i) eig = std::max(eig, std::abs(b.eigenvalues(i) - 1.0));
  const double mismatch = (b.from_cycles - b.from_ode).cwiseAbs().maxCoeff();

  const Model gaussian = load("gaussian");
  const MonodromyResult g = monodromy(gaussian, 0, 1.0);
  const double gauss = std::abs(g.from_cycles(0, 0) + 1.0);

  double trivial = 0.0;
  std::vector<cplx> loop;
  for (int k = 0; k <= 128; ++k) loop.push_back(1.0 + std::polar(0.5, pi + 2 * pi * k / 128));
  loop.back() = loop.front();
  for (const Model* m : {&bessel, &gaussian}) {
    const MonodromyResult r = monodromy_along(*m, loop);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m->rank(), m->rank());
    trivial = std::max({trivial, (r.from_cycles - id).cwiseAbs().maxCoeff(), (r.from_ode - id).cwiseAbs().maxCoeff()});
  }
  const bool ok = mismatch <= 1e-6 && eig <= 1e-6 && gauss <= 1e-8 && trivial <= 1e-8;
  return {ok, "Bessel cycles-vs-ODE " + fmt(mismatch) + ", eigenvalue dev " + fmt(eig) + "; Gaussian |M+1| " +
                  fmt(gauss) + "; trivial loop " + fmt(trivial)};
}

Outcome c10() {
  bool ok = true;
  int total = 0;
  for (std::size_t f = 0; f < names.size(); ++f) {
    const Model m = load(names[f]);
    std::mt19937_64 rng(1000 + f);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    std::uniform_int_distribution<int> terms(1, 6);
    const int low = m.spec.fiber == FiberType::AffineLine ? 0 : -4;
    std::uniform_int_distribution<int> expo(low, 5);
    std::uniform_int_distribution<int> tdeg(0, 2);
    for (int n = 0; n < 100; ++n) {
      LaurentPoly q;
      for (int k = terms(rng); k > 0; --k) q = q + LaurentPoly::monomial(Rational(num(rng), den(rng)), tdeg(rng), expo(rng));
      const RatVector red = reduce_form(twisted_differential(m.spec, q), m.spec, m.basis);
      ok = ok && static_cast<int>(red.size()) == m.rank();
      for (const auto& x : red) ok = ok && x.is_zero();
      ++total;
    }
  }
  return {ok, std::to_string(total) + " random Q reduced to zero"};
}

Outcome c11() {
  const auto [dcode, d] = cli_json({"derive", fixtures + "/linear.spec"});
  const Model m = load("linear");
  const CycleBasis cb = cycle_basis(m.spec, 1.0, valley_config(m.spec, 1.0));
  const PeriodMatrix p = period_matrix(m.spec, 1.0, cb, m.basis, 1e-12);
  const auto [vcode, v] = cli_json({"verify", fixtures + "/linear.spec", "--t", "1,0"});
  const bool ok = dcode == 0 && d["rank"] == 0 && d["connection"] == json::array() && p.size() == 0 && vcode == 0 &&
                  v["overall"] == true;
  return {ok, "rank " + (dcode == 0 ? d["rank"].dump() : "?") + ", verify exit " + std::to_string(vcode)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Airy derivation", c1},       {"Bessel derivation", c2},      {"Airy value at t=0", c3},
      {"Bessel value at t=1", c4},   {"Gaussian closed form", c5},   {"solution property", c6},
      {"perfectness", c7},           {"Stokes", c8},                 {"monodromy", c9},
      {"exactness kernel", c10},     {"degenerate input", c11}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %-22s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
