#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "expgm/cycles.hpp"

namespace expgm {

/// A period integral with its error budget. value is reported only when
/// error_estimate + truncation_bound <= tol * |value| + abs_floor.
struct PeriodValue {
  std::complex<double> value;
  double error_estimate = 0.0;
  double truncation_bound = 0.0;

  friend bool operator==(const PeriodValue&, const PeriodValue&) = default;
};

/// entries[i][j] = \int_{c_i} omega_j e^{g_t}: rows are cycles, columns forms.
struct PeriodMatrix {
  std::complex<double> t;
  std::vector<std::vector<PeriodValue>> entries;

  std::size_t size() const { return entries.size(); }
  Eigen::MatrixXcd values() const;
  friend bool operator==(const PeriodMatrix&, const PeriodMatrix&) = default;
};

enum class Precision {
  Double,
  /// About 50 significant digits; used for self-oracle runs.
  Extended,
};

struct QuadratureOptions {
  double abs_floor = 0.0;
  Precision precision = Precision::Double;
  int max_intervals = 40000;
};

/// \int_c P(u) e^{g_t(u)} du by globally adaptive Gauss-Kronrod (7/15) over
/// the polyline, with valley tails truncated at the cycle's radii.
PeriodValue integrate_period(const RapidDecayCycle& cycle, const LaurentPoly& form, const ProblemSpec& spec,
                             std::complex<double> t, double tol, const QuadratureOptions& options = {});

PeriodValue integrate_period(const RapidDecayCycle& cycle, int exponent, const ProblemSpec& spec, std::complex<double> t,
                             double tol, const QuadratureOptions& options = {});

/// \int_c |P(u)| |e^{g_t(u)}| |du|, the natural scale for cancellation tests.
double absolute_integral(const RapidDecayCycle& cycle, const LaurentPoly& form, const ProblemSpec& spec,
                         std::complex<double> t, double tol = 1e-8);

PeriodMatrix period_matrix(const ProblemSpec& spec, std::complex<double> t, const CycleBasis& cycles,
                           const CohomologyBasis& basis, double tol, const QuadratureOptions& options = {});

}  // namespace expgm
