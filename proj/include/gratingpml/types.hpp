// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_TYPES_HPP
#define GRATINGPML_TYPES_HPP

#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace gratingpml
{

using Complex = std::complex<double>;
using Vec2c = Eigen::Matrix<Complex, 2, 1>;
using Mat2c = Eigen::Matrix<Complex, 2, 2>;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

struct Point
{
  double x = 0.0;
  double y = 0.0;
};

}  // namespace gratingpml

#endif  // GRATINGPML_TYPES_HPP
