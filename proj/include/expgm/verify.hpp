#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "expgm/cycles.hpp"
#include "expgm/model.hpp"
#include "expgm/quadrature.hpp"

namespace expgm {

/// One numerical check. `relation` is "<" when the measured value must stay
/// below the threshold and ">" when it must exceed it.
struct CheckRecord {
  std::string name;
  nlohmann::json inputs;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation = "<";
  bool pass = false;
  nlohmann::json details;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct VerificationReport {
  std::string label;
  std::vector<CheckRecord> records;

  bool overall() const;
  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

struct VerifyOptions {
  double ode_tol = 1e-6;
  double stokes_tol = 1e-8;
  double monodromy_tol = 1e-6;
  double duality_floor = 1e-3;
  /// Relative tolerance for the period integrals feeding the checks.
  double quad_tol = 1e-13;
  /// Upper bound for the finite-difference step of check_ode.
  double fd_step = 0.05;
  std::uint64_t seed = 20240611;
  int stokes_samples = 5;
};

/// Cycles constructed at t together with their period matrix.
struct PeriodSnapshot {
  CycleBasis cycles;
  PeriodMatrix periods;
};

PeriodSnapshot periods_at(const Model& model, std::complex<double> t, double tol,
                          const QuadratureOptions& quad = {});
PeriodSnapshot periods_tracked(const Model& model, const CycleBasis& from, std::span<const std::complex<double>> path,
                               double tol, const QuadratureOptions& quad = {});

/// Y' = A Y for every tracked cycle, with Y' from a Richardson-extrapolated
/// four-point complex stencil.
CheckRecord check_ode(const Model& model, std::complex<double> t, const VerifyOptions& options = {});

/// Observed orders log2(r(h)/r(h/2)) of the plain central-difference residual
/// over two halvings of h0.
std::vector<double> ode_convergence_orders(const Model& model, std::complex<double> t, double h0,
                                           const VerifyOptions& options = {});

CheckRecord check_stokes(const Model& model, std::complex<double> t, const RapidDecayCycle& cycle, const LaurentPoly& q,
                         const VerifyOptions& options = {});

CheckRecord check_duality(const Model& model, std::complex<double> t, const VerifyOptions& options = {});

/// Numerical rank of the period matrix compared with the symbolic rank.
CheckRecord check_period_rank(const Model& model, std::complex<double> t, const VerifyOptions& options = {});

struct MonodromyResult {
  CheckRecord record;
  Eigen::MatrixXcd from_ode;
  Eigen::MatrixXcd from_cycles;
  Eigen::VectorXcd eigenvalues;  // of from_cycles
};

/// Monodromy along a closed polyline starting and ending at loop.front().
/// M acts on period matrices: P_after = M * P_before.
MonodromyResult monodromy_along(const Model& model, std::span<const std::complex<double>> loop,
                                const VerifyOptions& options = {});

/// Keyhole loop around a singular point based at t0.
std::vector<std::complex<double>> loop_around(const Model& model, std::complex<double> center, std::complex<double> t0,
                                              int points = 256);

MonodromyResult monodromy(const Model& model, std::size_t sigma_index, std::complex<double> t0,
                          const VerifyOptions& options = {});

/// Random gauge function for Stokes checks with u-degrees bounded by d + 2.
LaurentPoly random_gauge(const ProblemSpec& spec, std::uint64_t seed);

/// Full suite at one basepoint.
VerificationReport verify_all(const Model& model, std::complex<double> t, const VerifyOptions& options = {});

}  // namespace expgm
