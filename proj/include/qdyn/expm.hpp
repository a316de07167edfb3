#pragma once

#include <cmath>

#include "qdyn/types.hpp"

namespace qdyn {

/// Matrix exponential by scaling-and-squaring around a diagonal Pade [7/7]
/// kernel. The argument is halved until its 1-norm is below 0.5; at that
/// norm the [7/7] approximant is accurate to roundoff, so the result is
/// exact up to the conditioning of the squaring chain.
template <typename MatrixT>
MatrixT expm(const MatrixT& a) {
  using Scalar = typename MatrixT::Scalar;

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  }
  const MatrixT s = a / std::pow(2.0, squarings);

  // Pade [7/7] numerator/denominator coefficients.
  static constexpr double b[8] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                  25200.0,    1512.0,    56.0,      1.0};

  const MatrixT s2 = s * s;
  const MatrixT s4 = s2 * s2;
  const MatrixT s6 = s4 * s2;
  const MatrixT id = MatrixT::Identity(a.rows(), a.cols());

  const MatrixT u =
      s * (Scalar(b[7]) * s6 + Scalar(b[5]) * s4 + Scalar(b[3]) * s2 +
           Scalar(b[1]) * id);
  const MatrixT v = Scalar(b[6]) * s6 + Scalar(b[4]) * s4 +
                    Scalar(b[2]) * s2 + Scalar(b[0]) * id;

  MatrixT r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

}  // namespace qdyn
