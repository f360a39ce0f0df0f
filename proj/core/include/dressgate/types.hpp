#pragma once

#include <complex>

#include <Eigen/Core>

namespace dressgate {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Single atom, basis {|0>, |1>, |r>}.
using Matrix3c = Eigen::Matrix<Complex, 3, 3>;
// Two atoms, basis {0,1,r} x {0,1,r} in lexicographic order (see basis.hpp).
using Operator9 = Eigen::Matrix<Complex, 9, 9>;
using State9 = Eigen::Matrix<Complex, 9, 1>;
// Logical two-qubit space {|00>, |01>, |10>, |11>}.
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;

}  // namespace dressgate
