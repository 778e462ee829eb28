#include "expgm/model.hpp"

#include "expgm/error.hpp"

namespace expgm {

Model Model::build(ProblemSpec spec, int digits) {
  spec.validate();
  Model m;
  m.basis = fiber_basis(spec);
  m.connection = connection_matrix(spec, m.basis);
  m.sigma = singular_set(spec, m.connection, digits);
  m.spec = std::move(spec);
  return m;
}

Eigen::MatrixXcd Model::connection_at(std::complex<double> t) const {
  const auto n = static_cast<Eigen::Index>(connection.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const RatFun& f = connection.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const std::complex<double> den = f.den().eval(t);
      if (std::abs(den) == 0.0) throw Error(ErrorCode::AtSingularT, "connection matrix has a pole at the requested t");
      out(i, j) = f.num().eval(t) / den;
    }
  }
  return out;
}

}  // namespace expgm
