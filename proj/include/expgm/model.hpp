#pragma once

#include <complex>

#include <Eigen/Dense>

#include "expgm/cohomology.hpp"
#include "expgm/singular.hpp"

namespace expgm {

/// Everything derived exactly from a problem spec, computed once.
struct Model {
  ProblemSpec spec;
  CohomologyBasis basis;
  ConnectionMatrix connection;
  SingularSet sigma;

  static Model build(ProblemSpec spec, int digits = 15);

  int rank() const { return basis.rank; }
  /// A(t) as a complex matrix; throws AtSingularT at a pole.
  Eigen::MatrixXcd connection_at(std::complex<double> t) const;
};

}  // namespace expgm
