#include <cmath>
#include <numbers>

#include "doctest.h"
#include "expgm/error.hpp"
#include "expgm/verify.hpp"

using namespace expgm;
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

Model model(FiberType f, const char* g) { return Model::build({f, parse_laurent(g), g}); }

const Model airy = model(FiberType::AffineLine, "u^3/3 - t*u");
const Model gaussian = model(FiberType::AffineLine, "-t*u^2");
const Model bessel = model(FiberType::PuncturedLine, "(t/2)*(u - u^-1)");

std::vector<cplx> circle(cplx center, double radius, int n, double phase = 0.0) {
  std::vector<cplx> out;
  for (int k = 0; k <= n; ++k) out.push_back(center + std::polar(radius, phase + 2 * pi * k / n));
  out.back() = out.front();
  return out;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("periods solve the Gauss-Manin system") {
  for (const Model* m : {&airy, &gaussian, &bessel}) {
    for (cplx t : {cplx(1.0, 0.5), cplx(-0.8, 1.1)}) {
      const CheckRecord r = check_ode(*m, t);
      CHECK(r.pass);
      CHECK(r.measured < 1e-8);
      const auto orders = ode_convergence_orders(*m, t, 0.2);
      REQUIRE(orders.size() == 2);
      for (double o : orders) CHECK(o == doctest::Approx(2.0).epsilon(0.1));
    }
  }
}

TEST_CASE("a wrong connection matrix is detected") {
  Model broken = airy;
  broken.connection.a[1][0] = broken.connection.a[1][0] + RatFun(Rational(1, 100));
  CHECK_FALSE(check_ode(broken, cplx(0.5, 0.5)).pass);
}

TEST_CASE("Stokes: exact forms integrate to zero") {
  for (const Model* m : {&airy, &gaussian, &bessel}) {
    const cplx t(0.9, -0.3);
    const PeriodSnapshot s = periods_at(*m, t, 1e-12);
    for (std::uint64_t seed = 1; seed <= 4; ++seed)
      for (const auto& c : s.cycles.cycles) CHECK(check_stokes(*m, t, c, random_gauge(m->spec, seed)).pass);
  }
  // A basis form is not exact: the same normalized measure is of order one.
  const PeriodSnapshot s = periods_at(gaussian, 1.0, 1e-12);
  const LaurentPoly one = LaurentPoly::u_power(0);
  const double scale = absolute_integral(s.cycles.cycles[0], one, gaussian.spec, 1.0);
  CHECK(std::abs(integrate_period(s.cycles.cycles[0], one, gaussian.spec, 1.0, 1e-12).value) / scale > 0.5);
}

TEST_CASE("random gauges are reproducible") {
  CHECK(random_gauge(bessel.spec, 7) == random_gauge(bessel.spec, 7));
  CHECK_FALSE(random_gauge(bessel.spec, 7) == random_gauge(bessel.spec, 8));
  const LaurentPoly q = random_gauge(airy.spec, 3);
  for (const auto& [k, c] : q.terms()) CHECK(k >= 0);
}

TEST_CASE("duality and rank") {
  for (const Model* m : {&airy, &gaussian, &bessel}) {
    const CheckRecord d = check_duality(*m, cplx(1.3, 0.2));
    CHECK(d.pass);
    CHECK(d.details["condition_number"].get<double>() < 1e6);
    CHECK(check_period_rank(*m, cplx(1.3, 0.2)).pass);
  }
  // Airy Wronskian: det of the period matrix is constant in t.
  const auto det = [](cplx t) { return periods_at(airy, t, 1e-13).periods.values().determinant(); };
  CHECK(std::abs(det(0.3) - det(cplx(-1.0, 2.0))) < 1e-10 * std::abs(det(0.3)));
}

TEST_CASE("Bessel monodromy around zero") {
  const auto loop = loop_around(bessel, 0.0, 1.0);
  const MonodromyResult r = monodromy_along(bessel, loop);
  CHECK(r.record.pass);
  Eigen::MatrixXcd expect(2, 2);
  expect << 1, 0, -2, 1;  // the path picks up -2 loops
  CHECK(max_abs(r.from_cycles - expect) < 1e-10);
  CHECK(max_abs(r.from_ode - expect) < 1e-8);
  for (Eigen::Index i = 0; i < 2; ++i) CHECK(std::abs(r.eigenvalues(i) - 1.0) < 1e-6);

  // Twice around gives the square.
  std::vector<cplx> twice = loop;
  twice.insert(twice.end(), loop.begin() + 1, loop.end());
  CHECK(max_abs(monodromy_along(bessel, twice).from_cycles - expect * expect) < 1e-9);

  // Finer discretization of the same loop.
  const auto fine = loop_around(bessel, 0.0, 1.0, 512);
  CHECK(max_abs(monodromy_along(bessel, fine).from_cycles - r.from_cycles) < 1e-10);

  // Clockwise loop gives the inverse.
  std::vector<cplx> reversed(loop.rbegin(), loop.rend());
  CHECK(max_abs(monodromy_along(bessel, reversed).from_cycles - expect.inverse()) < 1e-9);
}

TEST_CASE("Gaussian and trivial monodromy") {
  const MonodromyResult g = monodromy(gaussian, 0, 1.0);
  CHECK(g.record.pass);
  CHECK(std::abs(g.from_cycles(0, 0) + 1.0) < 1e-8);
  CHECK(std::abs(g.from_ode(0, 0) + 1.0) < 1e-8);

  // A loop enclosing no singular point.
  for (const Model* m : {&airy, &gaussian, &bessel}) {
    const MonodromyResult r = monodromy_along(*m, circle(1.0, 0.5, 128, pi));
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m->rank(), m->rank());
    CHECK(max_abs(r.from_cycles - id) < 1e-8);
    CHECK(max_abs(r.from_ode - id) < 1e-8);
  }

  // Airy has no monodromy at all: its coefficients are entire.
  for (std::size_t i = 0; i < airy.sigma.points.size(); ++i)
    CHECK(max_abs(monodromy(airy, i, 1.0).from_cycles - Eigen::MatrixXcd::Identity(2, 2)) < 1e-8);
}

TEST_CASE("loops through singular balls are rejected") {
  try {
    monodromy_along(bessel, circle(1.0, 1.0, 64, pi));
    FAIL("expected LoopHitsSingularity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LoopHitsSingularity);
  }
  CHECK_THROWS_AS(loop_around(bessel, 0.0, 0.0), Error);
}

TEST_CASE("full report") {
  const VerificationReport rep = verify_all(bessel, 1.0);
  CHECK(rep.overall());
  CHECK(rep.label == bessel.spec.label);
  CHECK(rep == verify_all(bessel, 1.0));

  const Model linear = model(FiberType::AffineLine, "t*u");
  CHECK(linear.rank() == 0);
  CHECK(verify_all(linear, 1.0).overall());

  try {
    check_ode(bessel, 0.0);
    FAIL("expected SingularProximity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularProximity);
  }
}

TEST_CASE("ODE continuation survives exponential growth") {
  // Along this path the fundamental matrix reaches condition ~1e5; plain
  // double precision loses about that many digits.
  const Model m = model(FiberType::PuncturedLine, "t*(u + u^-1) + u^-2");
  const std::vector<cplx> there_and_back{cplx(0.7, 0.4), cplx(-2.6, 0.2), cplx(0.7, 0.4)};
  const MonodromyResult r = monodromy_along(m, there_and_back);
  CHECK(max_abs(r.from_ode - Eigen::MatrixXcd::Identity(3, 3)) < 1e-12);
  CHECK(max_abs(r.from_cycles - Eigen::MatrixXcd::Identity(3, 3)) < 1e-12);
}
