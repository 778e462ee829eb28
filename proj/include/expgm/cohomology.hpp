#pragma once

#include <string>
#include <vector>

#include "expgm/laurent.hpp"
#include "expgm/ratfun.hpp"

namespace expgm {

enum class FiberType { AffineLine, PuncturedLine };

std::string to_string(FiberType fiber);
FiberType parse_fiber(const std::string& text);

/// Product family U = A^1 x V with f the projection to the first factor and
/// g = g(t, u); V is the affine line or the punctured line in u.
struct ProblemSpec {
  FiberType fiber = FiberType::AffineLine;
  LaurentPoly g;
  std::string label;

  /// Throws InvalidSpec when g does not depend on u or has negative u-powers
  /// on the affine line.
  void validate() const;

  /// Top u-degree of g (0 when g has no positive powers).
  int top_degree() const;
  /// Pole order of g at u = 0 (0 when there is none).
  int pole_order() const;
};

/// Basis of H^1 of the fiber: omega_i = u^{exponents[i]} du.
struct CohomologyBasis {
  int rank = 0;
  std::vector<int> exponents;

  friend bool operator==(const CohomologyBasis&, const CohomologyBasis&) = default;
};

/// Y'(t) = A(t) Y(t) where Y_i = \int_c omega_i e^{g_t}; A[i][j] is the
/// coefficient of [omega_j] in d/dt [omega_i].
struct ConnectionMatrix {
  RatMatrix a;

  std::size_t size() const { return a.size(); }
  friend bool operator==(const ConnectionMatrix&, const ConnectionMatrix&) = default;
};

/// sum_j coefficients[j](t) * (d/dt)^j y = 0.
struct ScalarODE {
  std::vector<TPoly> coefficients;

  int order() const { return static_cast<int>(coefficients.size()) - 1; }
  /// e.g. "t*y'' + y' + t*y"
  std::string to_string() const;
  friend bool operator==(const ScalarODE&, const ScalarODE&) = default;
};

CohomologyBasis fiber_basis(const ProblemSpec& spec);

/// Twisted differential of a function: (dQ/du + Q dg/du) as the coefficient of du.
LaurentPoly twisted_differential(const ProblemSpec& spec, const LaurentPoly& q);

/// Coefficient of du in the t-derivative of the class [P du]:
/// dP/dt + P dg/dt.
LaurentPoly derivative_form(const ProblemSpec& spec, const LaurentPoly& p);

/// Coordinates of [P du] in the basis, exact over Q(t).
RatVector reduce_form(const LaurentPoly& p, const ProblemSpec& spec, const CohomologyBasis& basis);

ConnectionMatrix connection_matrix(const ProblemSpec& spec, const CohomologyBasis& basis);

/// Scalar equation satisfied by Y_start, from a cyclic-vector argument.
ScalarODE cyclic_ode(const ConnectionMatrix& a, std::size_t start);

}  // namespace expgm
