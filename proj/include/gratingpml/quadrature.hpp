// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_QUADRATURE_HPP
#define GRATINGPML_QUADRATURE_HPP

#include <array>
#include <vector>

#include "gratingpml/types.hpp"

namespace gratingpml::quad
{

// Point on the reference triangle in barycentric coordinates; weights sum to 1
// so the physical weight is w * area.
struct TrianglePoint
{
  std::array<double, 3> bary;
  double weight;
};

// Rule exact for polynomials of the requested total degree. Degree <= 5 uses
// the 7-point Radon rule; higher degrees use a collapsed Gauss product rule.
const std::vector<TrianglePoint> &triangle_rule(int degree);

// 5-point Gauss-Legendre on [0, 1], weights summing to 1.
struct LinePoint
{
  double t;
  double weight;
};
const std::array<LinePoint, 5> &gauss5();

// n-point Gauss-Legendre on [0, 1] for arbitrary n (Newton on P_n).
std::vector<LinePoint> gauss_legendre(int n);

inline Point map_to(const std::array<Point, 3> &v, const std::array<double, 3> &b)
{
  return {b[0] * v[0].x + b[1] * v[1].x + b[2] * v[2].x,
          b[0] * v[0].y + b[1] * v[1].y + b[2] * v[2].y};
}

}  // namespace gratingpml::quad

#endif  // GRATINGPML_QUADRATURE_HPP
