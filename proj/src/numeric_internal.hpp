#pragma once

// Multiprecision helpers shared by the numeric modules.

#include <complex>
#include <type_traits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "expgm/tpoly.hpp"

namespace expgm::detail {

namespace mp = boost::multiprecision;

template <class Real>
struct ComplexOf {
  using type = std::complex<Real>;
};
template <>
struct ComplexOf<mp::cpp_bin_float_50> {
  using type = mp::cpp_complex_50;
};
template <>
struct ComplexOf<mp::cpp_bin_float_100> {
  using type = mp::cpp_complex_100;
};

template <class Real>
using ComplexT = typename ComplexOf<Real>::type;

template <class Real>
Real to_real(const Rational& q) {
  if constexpr (std::is_same_v<Real, double>) {
    return q.get_d();
  } else {
    return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
  }
}

template <class Real>
ComplexT<Real> to_complex(std::complex<double> z) {
  return ComplexT<Real>(Real(z.real()), Real(z.imag()));
}

template <class Real>
std::complex<double> to_double(const ComplexT<Real>& z) {
  using std::real;
  using std::imag;
  return {static_cast<double>(real(z)), static_cast<double>(imag(z))};
}

template <class Real>
ComplexT<Real> eval_tpoly(const TPoly& p, const ComplexT<Real>& t) {
  ComplexT<Real> acc(0);
  const auto c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + ComplexT<Real>(to_real<Real>(*it));
  return acc;
}

}  // namespace expgm::detail
