#pragma once

#include <doctest.h>

#include "povmcoh/povm.hpp"
#include "povmcoh/random.hpp"

#include <numbers>

namespace povmcoh::testing {

inline bool matrix_close(const CMatrix &a, const CMatrix &b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).norm() <= tol;
}

inline DensityMatrix qubit_ket(int k) {
  CVector v = CVector::Zero(2);
  v(k) = 1.0;
  return PureState(v).projector();
}

inline DensityMatrix maximally_mixed(int d) {
  return DensityMatrix(CMatrix::Identity(d, d) / double(d));
}

inline PureState ket(std::initializer_list<Complex> amps) {
  CVector v(amps.size());
  int i = 0;
  for (const auto &a : amps)
    v(i++) = a;
  return PureState(v / v.norm());
}

constexpr double kLog2Of3 = 1.5849625007211562;

} // namespace povmcoh::testing
