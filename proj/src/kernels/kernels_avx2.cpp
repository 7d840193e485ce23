// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

// Compiled with -mavx2 -mfma; only reached after the runtime CPU check.

#include <immintrin.h>

#include "gratingpml/kernels.hpp"

namespace gratingpml::kernels::avx2
{

namespace
{

inline __m256d sq_len(__m256d ax, __m256d ay, __m256d bx, __m256d by)
{
  const __m256d dx = _mm256_sub_pd(bx, ax);
  const __m256d dy = _mm256_sub_pd(by, ay);
  return _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy));
}

}  // namespace

void triangle_geometry(const TriangleBatch &in, const GeometryOut &out)
{
  const std::size_t n = in.n;
  const std::size_t nv = n - n % 4;
  const __m256d one = _mm256_set1_pd(1.0), half = _mm256_set1_pd(0.5);
  for (std::size_t e = 0; e < nv; e += 4)
  {
    const __m256d x0 = _mm256_loadu_pd(in.x[0] + e), x1 = _mm256_loadu_pd(in.x[1] + e),
                  x2 = _mm256_loadu_pd(in.x[2] + e);
    const __m256d y0 = _mm256_loadu_pd(in.y[0] + e), y1 = _mm256_loadu_pd(in.y[1] + e),
                  y2 = _mm256_loadu_pd(in.y[2] + e);
    const __m256d det =
      _mm256_fmsub_pd(_mm256_sub_pd(x1, x0), _mm256_sub_pd(y2, y0),
                      _mm256_mul_pd(_mm256_sub_pd(x2, x0), _mm256_sub_pd(y1, y0)));
    const __m256d inv = _mm256_div_pd(one, det);
    _mm256_storeu_pd(out.area + e, _mm256_mul_pd(half, det));
    _mm256_storeu_pd(out.gx[0] + e, _mm256_mul_pd(_mm256_sub_pd(y1, y2), inv));
    _mm256_storeu_pd(out.gx[1] + e, _mm256_mul_pd(_mm256_sub_pd(y2, y0), inv));
    _mm256_storeu_pd(out.gx[2] + e, _mm256_mul_pd(_mm256_sub_pd(y0, y1), inv));
    _mm256_storeu_pd(out.gy[0] + e, _mm256_mul_pd(_mm256_sub_pd(x2, x1), inv));
    _mm256_storeu_pd(out.gy[1] + e, _mm256_mul_pd(_mm256_sub_pd(x0, x2), inv));
    _mm256_storeu_pd(out.gy[2] + e, _mm256_mul_pd(_mm256_sub_pd(x1, x0), inv));
    const __m256d l = _mm256_max_pd(_mm256_max_pd(sq_len(x0, y0, x1, y1), sq_len(x1, y1, x2, y2)),
                                    sq_len(x2, y2, x0, y0));
    _mm256_storeu_pd(out.diam + e, _mm256_sqrt_pd(l));
  }
  if (nv < n)
  {
    TriangleBatch tail = in;
    GeometryOut tout = out;
    tail.n = n - nv;
    for (int k = 0; k < 3; ++k)
    {
      tail.x[k] += nv;
      tail.y[k] += nv;
      tout.gx[k] += nv;
      tout.gy[k] += nv;
    }
    tout.area += nv;
    tout.diam += nv;
    scalar::triangle_geometry(tail, tout);
  }
}

void physical_element_matrices(const ElementIn &in, const ElasticConstants &k, double *out)
{
  const std::size_t n = in.n;
  const std::size_t nv = n - n % 4;
  const __m256d l2m = _mm256_set1_pd(k.lam2mu), mu = _mm256_set1_pd(k.mu),
                lpm = _mm256_set1_pd(k.lampmu), w12 = _mm256_set1_pd(k.omega2 / 12.0);
  for (std::size_t e = 0; e < nv; e += 4)
  {
    const __m256d a = _mm256_loadu_pd(in.area + e);
    const __m256d mass = _mm256_mul_pd(w12, a);
    const __m256d alpm = _mm256_mul_pd(a, lpm);
    __m256d gx[3], gy[3];
    for (int i = 0; i < 3; ++i)
    {
      gx[i] = _mm256_loadu_pd(in.gx[i] + e);
      gy[i] = _mm256_loadu_pd(in.gy[i] + e);
    }
    for (int i = 0; i < 3; ++i)
    {
      for (int j = 0; j < 3; ++j)
      {
        const __m256d m = i == j ? _mm256_add_pd(mass, mass) : mass;
        const __m256d xx = _mm256_mul_pd(gx[i], gx[j]);
        const __m256d yy = _mm256_mul_pd(gy[i], gy[j]);
        const int r0 = 2 * i, c0 = 2 * j;
        const __m256d k00 = _mm256_fmsub_pd(
          a, _mm256_fmadd_pd(l2m, xx, _mm256_mul_pd(mu, yy)), m);
        const __m256d k11 = _mm256_fmsub_pd(
          a, _mm256_fmadd_pd(l2m, yy, _mm256_mul_pd(mu, xx)), m);
        _mm256_storeu_pd(out + (6 * r0 + c0) * n + e, k00);
        _mm256_storeu_pd(out + (6 * (r0 + 1) + c0 + 1) * n + e, k11);
        _mm256_storeu_pd(out + (6 * r0 + c0 + 1) * n + e,
                         _mm256_mul_pd(alpm, _mm256_mul_pd(gx[i], gy[j])));
        _mm256_storeu_pd(out + (6 * (r0 + 1) + c0) * n + e,
                         _mm256_mul_pd(alpm, _mm256_mul_pd(gy[i], gx[j])));
      }
    }
  }
  for (std::size_t e = nv; e < n; ++e)
  {
    const double a = in.area[e];
    const double mass = k.omega2 * a / 12.0;
    for (int i = 0; i < 3; ++i)
    {
      for (int j = 0; j < 3; ++j)
      {
        const double gxi = in.gx[i][e], gyi = in.gy[i][e], gxj = in.gx[j][e],
                     gyj = in.gy[j][e];
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

}  // namespace gratingpml::kernels::avx2
