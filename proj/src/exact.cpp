// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include "gratingpml/exact.hpp"

#include <cmath>

#include "gratingpml/estimator.hpp"
#include "gratingpml/quadrature.hpp"

namespace gratingpml
{

FlatSolution flat_solution(const WaveContext &ctx)
{
  FlatSolution s;
  s.ctx = ctx;
  const double a = ctx.alpha, b = ctx.beta;
  s.beta2_0 = std::sqrt(ctx.kappa2 * ctx.kappa2 - a * a);
  const double den = a * a + b * s.beta2_0;
  s.R1 = (a * std::sin(ctx.theta) - s.beta2_0 * std::cos(ctx.theta)) / den;
  s.R2 = (a * std::cos(ctx.theta) + b * std::sin(ctx.theta)) / den;
  return s;
}

Vec2c FlatSolution::value(double x, double y) const
{
  const double a = ctx.alpha, b = ctx.beta;
  const Complex p1 = ctx.amplitude * R1 * std::exp(I * (a * x + b * y));
  const Complex p2 = ctx.amplitude * R2 * std::exp(I * (a * x + beta2_0 * y));
  Vec2c u = incident_field(ctx, x, y);
  u(0) -= a * p1 + beta2_0 * p2;
  u(1) -= b * p1 - a * p2;
  return u;
}

Mat2c FlatSolution::gradient(double x, double y) const
{
  const double a = ctx.alpha, b = ctx.beta;
  const Complex p1 = ctx.amplitude * R1 * std::exp(I * (a * x + b * y));
  const Complex p2 = ctx.amplitude * R2 * std::exp(I * (a * x + beta2_0 * y));
  Mat2c g = incident_gradient(ctx, x, y);
  const Vec2c d1(a, b), d2(beta2_0, -a);
  // d/dx of both reflected waves is i alpha; d/dy is i beta and i beta2_0.
  g(0, 0) -= I * a * (d1(0) * p1 + d2(0) * p2);
  g(1, 0) -= I * a * (d1(1) * p1 + d2(1) * p2);
  g(0, 1) -= I * (b * d1(0) * p1 + beta2_0 * d2(0) * p2);
  g(1, 1) -= I * (b * d1(1) * p1 + beta2_0 * d2(1) * p2);
  return g;
}

double FlatSolution::energy_identity() const
{
  return ctx.kappa1 * ctx.kappa1 * (ctx.beta * R1 * R1 + beta2_0 * R2 * R2) / ctx.beta;
}

double h1_seminorm_error(const Mesh &mesh, const SolutionField &u, const FlatSolution &exact,
                         int quad_degree)
{
  double acc = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
  {
    if (mesh.regions[t] != Region::Physical)
    {
      continue;
    }
    const Mat2c gh = element_gradient(mesh, t, u);
    const auto v = mesh.vertices(t);
    double local = 0.0;
    for (const auto &q : quad::triangle_rule(quad_degree))
    {
      const Point x = quad::map_to(v, q.bary);
      local += q.weight * (exact.gradient(x.x, x.y) - gh).squaredNorm();
    }
    acc += local * mesh.area(t);
  }
  return std::sqrt(acc);
}

}  // namespace gratingpml
