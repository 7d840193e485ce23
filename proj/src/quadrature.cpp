// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include "gratingpml/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace gratingpml::quad
{

namespace
{

std::vector<TrianglePoint> radon7()
{
  const double s15 = std::sqrt(15.0);
  const double a = (6.0 - s15) / 21.0, wa = (155.0 - s15) / 1200.0;
  const double b = (6.0 + s15) / 21.0, wb = (155.0 + s15) / 1200.0;
  return {
    {{1.0 / 3, 1.0 / 3, 1.0 / 3}, 9.0 / 40.0},
    {{a, a, 1.0 - 2.0 * a}, wa},
    {{a, 1.0 - 2.0 * a, a}, wa},
    {{1.0 - 2.0 * a, a, a}, wa},
    {{b, b, 1.0 - 2.0 * b}, wb},
    {{b, 1.0 - 2.0 * b, b}, wb},
    {{1.0 - 2.0 * b, b, b}, wb},
  };
}

// Duffy collapse of [0,1]^2 onto the triangle; the Jacobian (1 - u) raises the
// degree in u by one, hence n = ceil((degree + 2) / 2) points per direction.
std::vector<TrianglePoint> collapsed(int degree)
{
  const int n = (degree + 3) / 2;
  const auto g = gauss_legendre(n);
  std::vector<TrianglePoint> rule;
  rule.reserve(n * n);
  for (const auto &pu : g)
  {
    for (const auto &pv : g)
    {
      const double l1 = pu.t;
      const double l2 = pv.t * (1.0 - pu.t);
      // Reference area is 1/2; normalised weights sum to 1.
      rule.push_back({{1.0 - l1 - l2, l1, l2}, 2.0 * pu.weight * pv.weight * (1.0 - pu.t)});
    }
  }
  return rule;
}

}  // namespace

std::vector<LinePoint> gauss_legendre(int n)
{
  std::vector<LinePoint> pts(n);
  for (int i = 0; i < n; ++i)
  {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it)
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k)
      {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      const double pn = n == 0 ? 1.0 : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    pts[i] = {0.5 * (1.0 - x), 0.5 * w};
  }
  return pts;
}

const std::vector<TrianglePoint> &triangle_rule(int degree)
{
  static std::mutex lock;
  static std::map<int, std::vector<TrianglePoint>> cache;
  const std::scoped_lock guard(lock);
  const int key = degree <= 5 ? 5 : degree;
  auto it = cache.find(key);
  if (it == cache.end())
  {
    it = cache.emplace(key, key == 5 ? radon7() : collapsed(key)).first;
  }
  return it->second;
}

const std::array<LinePoint, 5> &gauss5()
{
  static const std::array<LinePoint, 5> rule = [] {
    const double r = 2.0 * std::sqrt(10.0 / 7.0);
    const double x1 = std::sqrt(5.0 - r) / 3.0, x2 = std::sqrt(5.0 + r) / 3.0;
    const double w0 = 128.0 / 225.0;
    const double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
    const double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
    auto pt = [](double x, double w) { return LinePoint{0.5 * (1.0 + x), 0.5 * w}; };
    return std::array<LinePoint, 5>{pt(-x2, w2), pt(-x1, w1), pt(0.0, w0), pt(x1, w1),
                                    pt(x2, w2)};
  }();
  return rule;
}

}  // namespace gratingpml::quad
