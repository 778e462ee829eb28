#pragma once

#include <complex>
#include <string>
#include <vector>

#include "expgm/cohomology.hpp"

namespace expgm {

/// Disk certified to contain exactly `multiplicity` roots (counted with
/// multiplicity) of one distinct root.
struct RootBall {
  std::complex<double> center;
  double radius = 0.0;
  int multiplicity = 1;

  friend bool operator==(const RootBall&, const RootBall&) = default;
};

/// Isolates the distinct complex roots of p (not identically zero) working
/// with at least `digits` significant digits. Throws PrecisionExhausted when
/// the inclusion disks cannot be separated at the highest available precision.
std::vector<RootBall> root_isolate(const TPoly& p, int digits = 15);

enum class Provenance { LeadingCoeffVanishes, CriticalPointDegeneration, ConnectionPole };

std::string to_string(Provenance p);
Provenance parse_provenance(const std::string& text);

struct DefiningPolynomial {
  TPoly poly;
  Provenance provenance;

  friend bool operator==(const DefiningPolynomial&, const DefiningPolynomial&) = default;
};

struct SingularPoint {
  std::complex<double> center;
  double radius = 0.0;
  std::vector<Provenance> provenance;

  friend bool operator==(const SingularPoint&, const SingularPoint&) = default;
};

/// Finite over-approximation of the parameter values where the fibration,
/// the connection or the rapid-decay cycles may degenerate.
struct SingularSet {
  std::vector<DefiningPolynomial> defining;
  std::vector<SingularPoint> points;

  /// Signed distance from t to the nearest ball (infinite when empty).
  double distance(std::complex<double> t) const;
  bool admissible(std::complex<double> t, double margin = 1e-8) const { return distance(t) > margin; }
  /// Index of the ball containing t, or -1.
  int containing(std::complex<double> t) const;

  friend bool operator==(const SingularSet&, const SingularSet&) = default;
};

SingularSet singular_set(const ProblemSpec& spec, const ConnectionMatrix& a, int digits = 15);

/// Res_u(p, dp/du) for p in Q[t][u] given with nonnegative u-exponents.
TPoly discriminant_resultant(const LaurentPoly& p);

}  // namespace expgm
