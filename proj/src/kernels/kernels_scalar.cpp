// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "gratingpml/kernels.hpp"

namespace gratingpml::kernels::scalar
{

void triangle_geometry(const TriangleBatch &in, const GeometryOut &out)
{
  for (std::size_t e = 0; e < in.n; ++e)
  {
    const double x0 = in.x[0][e], x1 = in.x[1][e], x2 = in.x[2][e];
    const double y0 = in.y[0][e], y1 = in.y[1][e], y2 = in.y[2][e];
    const double det = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
    const double inv = 1.0 / det;
    out.area[e] = 0.5 * det;
    out.gx[0][e] = (y1 - y2) * inv;
    out.gx[1][e] = (y2 - y0) * inv;
    out.gx[2][e] = (y0 - y1) * inv;
    out.gy[0][e] = (x2 - x1) * inv;
    out.gy[1][e] = (x0 - x2) * inv;
    out.gy[2][e] = (x1 - x0) * inv;
    const double l01 = (x1 - x0) * (x1 - x0) + (y1 - y0) * (y1 - y0);
    const double l12 = (x2 - x1) * (x2 - x1) + (y2 - y1) * (y2 - y1);
    const double l20 = (x0 - x2) * (x0 - x2) + (y0 - y2) * (y0 - y2);
    out.diam[e] = std::sqrt(std::max({l01, l12, l20}));
  }
}

void physical_element_matrices(const ElementIn &in, const ElasticConstants &k, double *out)
{
  const std::size_t n = in.n;
  for (std::size_t e = 0; e < n; ++e)
  {
    const double a = in.area[e];
    const double mass = k.omega2 * a / 12.0;
    for (int i = 0; i < 3; ++i)
    {
      const double gxi = in.gx[i][e], gyi = in.gy[i][e];
      for (int j = 0; j < 3; ++j)
      {
        const double gxj = in.gx[j][e], gyj = in.gy[j][e];
        const double m = (i == j ? 2.0 : 1.0) * mass;
        const int r0 = 2 * i, c0 = 2 * j;
        out[(6 * r0 + c0) * n + e] = a * (k.lam2mu * gxi * gxj + k.mu * gyi * gyj) - m;
        out[(6 * (r0 + 1) + c0 + 1) * n + e] = a * (k.lam2mu * gyi * gyj + k.mu * gxi * gxj) - m;
        out[(6 * r0 + c0 + 1) * n + e] = a * k.lampmu * gxi * gyj;
        out[(6 * (r0 + 1) + c0) * n + e] = a * k.lampmu * gyi * gxj;
      }
    }
  }
}

}  // namespace gratingpml::kernels::scalar
