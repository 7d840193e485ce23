// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "gratingpml/quadrature.hpp"

using namespace gratingpml;

namespace
{
// Integral of x^i y^j over the reference triangle (0,0), (1,0), (0,1), divided by its area.
double monomial_mean(int i, int j)
{
  return 2.0 * std::tgamma(i + 1) * std::tgamma(j + 1) / std::tgamma(i + j + 3);
}
}  // namespace

TEST_CASE("triangle rules integrate monomials up to their degree")
{
  const std::array<Point, 3> ref = {Point{0, 0}, Point{1, 0}, Point{0, 1}};
  for (int degree : {1, 2, 5, 7, 9, 12})
  {
    const auto &rule = quad::triangle_rule(degree);
    double wsum = 0.0;
    for (const auto &q : rule)
    {
      wsum += q.weight;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (int i = 0; i <= degree; ++i)
    {
      for (int j = 0; i + j <= degree; ++j)
      {
        double acc = 0.0;
        for (const auto &q : rule)
        {
          const Point x = quad::map_to(ref, q.bary);
          acc += q.weight * std::pow(x.x, i) * std::pow(x.y, j);
        }
        CHECK(acc == doctest::Approx(monomial_mean(i, j)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("five-point Gauss rule on [0,1] is exact to degree 9")
{
  for (int k = 0; k <= 9; ++k)
  {
    double acc = 0.0;
    for (const auto &q : quad::gauss5())
    {
      acc += q.weight * std::pow(q.t, k);
    }
    CHECK(acc == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
  }
}

TEST_CASE("Gauss-Legendre rules of several sizes")
{
  for (int n : {1, 3, 8, 16})
  {
    const auto rule = quad::gauss_legendre(n);
    CHECK(rule.size() == static_cast<std::size_t>(n));
    for (int k = 0; k <= 2 * n - 1; ++k)
    {
      double acc = 0.0;
      for (const auto &q : rule)
      {
        acc += q.weight * std::pow(q.t, k);
      }
      CHECK(acc == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
  }
}
