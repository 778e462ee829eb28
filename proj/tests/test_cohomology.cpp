#include "doctest.h"
#include "expgm/cohomology.hpp"
#include "expgm/error.hpp"
#include "random_poly.hpp"

using namespace expgm;

namespace {

ProblemSpec airy() { return {FiberType::AffineLine, parse_laurent("u^3/3 - t*u"), "airy"}; }
ProblemSpec bessel() { return {FiberType::PuncturedLine, parse_laurent("(t/2)*(u - u^-1)"), "bessel"}; }
ProblemSpec gaussian() { return {FiberType::AffineLine, parse_laurent("-t*u^2"), "gaussian"}; }
ProblemSpec linear() { return {FiberType::AffineLine, parse_laurent("t*u"), "linear"}; }

RatFun R(const char* s) { return parse_ratfun(s); }

// Random gauge function allowed on the fiber.
LaurentPoly random_gauge(std::mt19937_64& rng, const ProblemSpec& spec) {
  const int low = spec.fiber == FiberType::AffineLine ? 0 : -(spec.pole_order() + 2);
  return testing::random_laurent(rng, low, spec.top_degree() + 2, 2);
}

}  // namespace

TEST_CASE("fiber_basis ranks and windows") {
  CHECK(fiber_basis(airy()) == CohomologyBasis{2, {0, 1}});
  CHECK(fiber_basis(linear()) == CohomologyBasis{0, {}});
  CHECK(fiber_basis(bessel()) == CohomologyBasis{2, {-1, 0}});
  CHECK(fiber_basis(gaussian()) == CohomologyBasis{1, {0}});
  // Punctured line without a pole at zero keeps du/u in the basis.
  CHECK(fiber_basis({FiberType::PuncturedLine, parse_laurent("t*u"), ""}) == CohomologyBasis{1, {-1}});
  CHECK(fiber_basis({FiberType::PuncturedLine, parse_laurent("t*u^-2 + u^-1"), ""}) == CohomologyBasis{2, {-2, -1}});
  CHECK_THROWS_AS(fiber_basis({FiberType::AffineLine, parse_laurent("t^2"), ""}), Error);
  CHECK_THROWS_AS(fiber_basis({FiberType::AffineLine, parse_laurent("u^-1"), ""}), Error);
}

TEST_CASE("reduce_form examples") {
  const auto spec = airy();
  const auto basis = fiber_basis(spec);
  CHECK(reduce_form(parse_laurent("u^2"), spec, basis) == RatVector{R("t"), R("0")});
  const auto bspec = bessel();
  CHECK(reduce_form(parse_laurent("u^-2"), bspec, fiber_basis(bspec)) == RatVector{R("0"), R("-1")});
  for (std::size_t i = 0; i < basis.exponents.size(); ++i) {
    RatVector unit(basis.exponents.size());
    unit[i] = R("1");
    CHECK(reduce_form(LaurentPoly::u_power(basis.exponents[i]), spec, basis) == unit);
  }
}

TEST_CASE("connection matrices") {
  SUBCASE("airy") {
    const auto spec = airy();
    const auto a = connection_matrix(spec, fiber_basis(spec));
    CHECK(a.a == RatMatrix{{R("0"), R("-1")}, {R("-t"), R("0")}});
    CHECK(cyclic_ode(a, 0).to_string() == "y'' - t*y");
  }
  SUBCASE("gaussian") {
    const auto spec = gaussian();
    const auto a = connection_matrix(spec, fiber_basis(spec));
    CHECK(a.a == RatMatrix{{R("(-1/2)/(t)")}});
    CHECK(cyclic_ode(a, 0).to_string() == "2*t*y' + y");
  }
  SUBCASE("bessel") {
    const auto spec = bessel();
    const auto a = connection_matrix(spec, fiber_basis(spec));
    CHECK(a.a == RatMatrix{{R("0"), R("1")}, {R("-1"), R("(-1)/(t)")}});
    const ScalarODE ode = cyclic_ode(a, 0);
    CHECK(ode.to_string() == "t*y'' + y' + t*y");
    const TPoly t = TPoly::variable();
    CHECK(ode.coefficients == std::vector<TPoly>{t, TPoly(Rational(1)), t});
  }
  SUBCASE("rank zero") {
    const auto spec = linear();
    const auto a = connection_matrix(spec, fiber_basis(spec));
    CHECK(a.size() == 0);
    CHECK(cyclic_ode(a, 0).order() == 0);
    CHECK(cyclic_ode(a, 0).to_string() == "y");
  }
}

TEST_CASE("reduction kernel and linearity on random inputs") {
  std::mt19937_64 rng(99);
  for (const auto& spec : {airy(), bessel(), gaussian(), linear(),
                           ProblemSpec{FiberType::AffineLine, parse_laurent("u^4/4 + t*u^2 - t^2*u"), "quartic"},
                           ProblemSpec{FiberType::PuncturedLine, parse_laurent("t*u^2 + u - (1+t)*u^-2"), "mixed"}}) {
    CAPTURE(spec.label);
    const auto basis = fiber_basis(spec);
    for (int i = 0; i < 15; ++i) {
      const LaurentPoly q = random_gauge(rng, spec);
      for (const auto& c : reduce_form(twisted_differential(spec, q), spec, basis)) CHECK(c.is_zero());

      const LaurentPoly p1 = random_gauge(rng, spec);
      const LaurentPoly p2 = random_gauge(rng, spec);
      const TPoly a = testing::random_tpoly(rng, 1);
      const TPoly b = testing::random_tpoly(rng, 1);
      const RatVector lhs = reduce_form(p1.scaled(a) + p2.scaled(b), spec, basis);
      const RatVector r1 = reduce_form(p1, spec, basis);
      const RatVector r2 = reduce_form(p2, spec, basis);
      for (std::size_t j = 0; j < lhs.size(); ++j) CHECK(lhs[j] == RatFun(a) * r1[j] + RatFun(b) * r2[j]);
    }
  }
}

TEST_CASE("cyclic ODE annihilates the formal solution") {
  for (const auto& spec : {airy(), bessel(), gaussian(),
                           ProblemSpec{FiberType::AffineLine, parse_laurent("u^4/4 + t*u^2 - t^2*u"), "quartic"}}) {
    CAPTURE(spec.label);
    const auto a = connection_matrix(spec, fiber_basis(spec));
    const ScalarODE ode = cyclic_ode(a, 0);
    CHECK(!ode.coefficients.back().is_zero());
    const std::size_t r = a.size();
    RatVector v(r);
    v[0] = R("1");
    RatVector acc(r);
    for (int j = 0; j <= ode.order(); ++j) {
      for (std::size_t i = 0; i < r; ++i) acc[i] += RatFun(ode.coefficients[static_cast<std::size_t>(j)]) * v[i];
      RatVector next(r);
      for (std::size_t col = 0; col < r; ++col) {
        next[col] = v[col].derivative();
        for (std::size_t i = 0; i < r; ++i) next[col] += v[i] * a.a[i][col];
      }
      v = next;
    }
    for (const auto& x : acc) CHECK(x.is_zero());
  }
}

TEST_CASE("basis change covariance") {
  const auto spec = ProblemSpec{FiberType::AffineLine, parse_laurent("u^4/4 + t*u^2 - t^2*u"), "quartic"};
  const auto basis = fiber_basis(spec);
  const auto a = connection_matrix(spec, basis);
  const RatMatrix tmat{{R("1"), R("2"), R("0")}, {R("0"), R("1"), R("-1/3")}, {R("5"), R("0"), R("1")}};
  // Rows of the transformed connection: d/dt (sum_j T_ij omega_j) expressed in omega, then in T.omega.
  RatMatrix in_old;
  for (const auto& row : tmat) {
    LaurentPoly form;
    for (std::size_t j = 0; j < row.size(); ++j) form += LaurentPoly::u_power(basis.exponents[j]).scaled(row[j].num());
    in_old.push_back(reduce_form(derivative_form(spec, form), spec, basis));
  }
  const RatMatrix direct = multiply(in_old, inverse(tmat));
  CHECK(direct == multiply(multiply(tmat, a.a), inverse(tmat)));
}
