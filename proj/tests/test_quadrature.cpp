#include <cmath>
#include <numbers>

#include "doctest.h"
#include "expgm/error.hpp"
#include "expgm/quadrature.hpp"

using namespace expgm;
using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

namespace {

ProblemSpec spec(FiberType f, const char* g) { return {f, parse_laurent(g), g}; }

const ProblemSpec airy = spec(FiberType::AffineLine, "u^3/3 - t*u");
const ProblemSpec gaussian = spec(FiberType::AffineLine, "-t*u^2");
const ProblemSpec bessel = spec(FiberType::PuncturedLine, "(t/2)*(u - u^-1)");

CycleBasis basis_at(const ProblemSpec& s, cplx t) { return cycle_basis(s, t, valley_config(s, t)); }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// J_n(x) by its power series; terms alternate and decrease once k > x^2/4.
double bessel_j(int n, double x) {
  double term = std::pow(x / 2, n) / std::tgamma(n + 1.0);
  double sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    sum += term;
    term *= -(x * x / 4) / ((k + 1.0) * (k + 1.0 + n));
  }
  return sum;
}

}  // namespace

TEST_CASE("Gaussian closed form") {
  for (double t : {1.0, 2.0, 0.5, 7.0}) {
    const auto cb = basis_at(gaussian, t);
    const PeriodValue v = integrate_period(cb.cycles[0], 0, gaussian, t, 1e-13);
    CHECK(rel(v.value, std::sqrt(pi / t)) < 1e-12);
    CHECK(v.error_estimate + v.truncation_bound <= 1e-13 * std::abs(v.value));
  }
  // Higher moments: int u^2 e^{-t u^2} du = sqrt(pi) / (2 t^{3/2}).
  const auto cb = basis_at(gaussian, 2.0);
  CHECK(rel(integrate_period(cb.cycles[0], 2, gaussian, 2.0, 1e-13).value, std::sqrt(pi) / (2 * std::pow(2.0, 1.5))) <
        1e-12);
  CHECK(std::abs(integrate_period(cb.cycles[0], 1, gaussian, 2.0, 1e-13, {.abs_floor = 1e-14}).value) < 1e-13);
}

TEST_CASE("Bessel loop periods") {
  for (double t : {0.5, 1.0, 3.0}) {
    const auto cb = basis_at(bessel, t);
    // int_{|u|=1} u^{-n-1} e^{(t/2)(u - 1/u)} du = 2 pi i J_n(t)
    CHECK(rel(integrate_period(cb.cycles[0], -1, bessel, t, 1e-13).value, 2 * pi * I * bessel_j(0, t)) < 1e-12);
    CHECK(rel(integrate_period(cb.cycles[0], -2, bessel, t, 1e-13).value, 2 * pi * I * bessel_j(1, t)) < 1e-12);
    CHECK(rel(integrate_period(cb.cycles[0], 0, bessel, t, 1e-13).value, -2 * pi * I * bessel_j(1, t)) < 1e-12);
  }
}

TEST_CASE("Airy thimble against the extended-precision run") {
  const cplx t(0.7, -0.4);
  const auto cb = basis_at(airy, t);
  for (std::size_t c = 0; c < cb.cycles.size(); ++c) {
    for (int k : {0, 1}) {
      const cplx ref =
          integrate_period(cb.cycles[c], k, airy, t, 1e-25, {.precision = Precision::Extended}).value;
      // The reported budget must cover the actual error at every tolerance.
      for (double tol = 1e-4; tol >= 1e-13; tol /= 10) {
        const PeriodValue v = integrate_period(cb.cycles[c], k, airy, t, tol);
        CHECK(std::abs(v.value - ref) <= v.error_estimate + v.truncation_bound + 4e-16 * std::abs(ref));
        CHECK(std::abs(v.value - ref) <= tol * std::abs(ref));
      }
    }
  }
  const cplx ai0 = 2 * pi * I * std::pow(3.0, -2.0 / 3) / std::tgamma(2.0 / 3);
  CHECK(rel(integrate_period(basis_at(airy, 0.0).cycles[0], 0, airy, 0.0, 1e-13).value, ai0) < 1e-12);
}

TEST_CASE("linearity in the form") {
  const cplx t(1.2, 0.3);
  const auto cb = basis_at(airy, t);
  const LaurentPoly p = parse_laurent("3*u^2 - 1/2*u + 5");
  const cplx direct = integrate_period(cb.cycles[1], p, airy, t, 1e-13).value;
  const cplx split = 3.0 * integrate_period(cb.cycles[1], 2, airy, t, 1e-13).value -
                     0.5 * integrate_period(cb.cycles[1], 1, airy, t, 1e-13).value +
                     5.0 * integrate_period(cb.cycles[1], 0, airy, t, 1e-13).value;
  CHECK(rel(direct, split) < 1e-11);
}

TEST_CASE("path deformation leaves the period unchanged") {
  const cplx t(0.4, 0.2);
  const auto cb = basis_at(airy, t);
  for (const auto& c : cb.cycles) {
    const cplx ref = integrate_period(c, 0, airy, t, 1e-13).value;
    RapidDecayCycle bent = c;
    // Push an interior node outwards and insert a detour; the integrand is entire.
    const std::size_t mid = bent.nodes.size() / 2;
    bent.nodes[mid] *= 1.7;
    bent.nodes.insert(bent.nodes.begin() + static_cast<long>(mid), bent.nodes[mid] + cplx(0.3, -0.8));
    CHECK(rel(integrate_period(bent, 0, airy, t, 1e-13).value, ref) < 1e-12);

    RapidDecayCycle longer = c;
    longer.nodes.front() *= 1.3;
    longer.nodes.back() *= 1.3;
    CHECK(rel(integrate_period(longer, 0, airy, t, 1e-13).value, ref) < 1e-12);
  }
  // A loop of another radius around u = 0 gives the same Bessel period.
  const auto bb = basis_at(bessel, 1.0);
  RapidDecayCycle wide = bb.cycles[0];
  for (auto& z : wide.nodes) z *= 2.5;
  CHECK(rel(integrate_period(wide, -1, bessel, 1.0, 1e-13).value,
            integrate_period(bb.cycles[0], -1, bessel, 1.0, 1e-13).value) < 1e-12);
}

TEST_CASE("closed loops integrate exact forms to zero") {
  const auto bb = basis_at(bessel, 1.5);
  // d/du (u^k e^g) = (k u^{k-1} + u^k g') e^g
  for (int k : {-3, -1, 0, 2}) {
    const LaurentPoly q = LaurentPoly::u_power(k);
    const LaurentPoly w = twisted_differential(bessel, q);
    const double scale = absolute_integral(bb.cycles[0], w, bessel, 1.5);
    const cplx v = integrate_period(bb.cycles[0], w, bessel, 1.5, 1e-12, {.abs_floor = 1e-14 * scale}).value;
    CHECK(std::abs(v) < 1e-12 * scale);
  }
}

TEST_CASE("tails that do not decay are rejected") {
  const auto cb = basis_at(gaussian, 1.0);
  RapidDecayCycle hill = cb.cycles[0];
  for (auto& z : hill.nodes) z *= I;  // rotate into the hills of -u^2
  try {
    integrate_period(hill, 0, gaussian, 1.0, 1e-10);
    FAIL("expected NonDecayingTail");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonDecayingTail);
  }
}

TEST_CASE("period matrix layout") {
  const cplx t(0.3, 0.1);
  const auto basis = fiber_basis(bessel);
  const auto cb = basis_at(bessel, t);
  const PeriodMatrix p = period_matrix(bessel, t, cb, basis, 1e-12);
  REQUIRE(p.size() == 2);
  const Eigen::MatrixXcd v = p.values();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(v(static_cast<long>(i), static_cast<long>(j)) ==
            integrate_period(cb.cycles[i], basis.exponents[j], bessel, t, 1e-12).value);
}
