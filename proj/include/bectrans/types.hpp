#pragma once

#include <Eigen/Dense>
#include <complex>

namespace bectrans {

template <class Scalar>
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using ArrayXc = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using VectorXc = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

}  // namespace bectrans
