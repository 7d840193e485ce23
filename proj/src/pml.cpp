// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include "gratingpml/pml.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gratingpml/errors.hpp"

namespace gratingpml
{

PmlProfile make_pml_profile(Complex sigma, double delta, int m, double b)
{
  if (sigma.real() < 0.0 || sigma.imag() < 0.0)
  {
    throw ParameterError("PML strength sigma must have non-negative real and imaginary parts");
  }
  if (!(delta > 0.0))
  {
    throw ParameterError("PML thickness delta must be positive");
  }
  if (m < 1)
  {
    throw ParameterError("PML power m must be at least 1");
  }
  PmlProfile p;
  p.sigma = sigma;
  p.delta = delta;
  p.m = m;
  p.b = b;
  p.zeta = compute_zeta(p);
  return p;
}

Complex rho(const PmlProfile &p, double y)
{
  if (y <= p.b)
  {
    return {1.0, 0.0};
  }
  return 1.0 + p.sigma * std::pow((y - p.b) / p.delta, p.m);
}

Complex rho_prime(const PmlProfile &p, double y)
{
  if (y <= p.b)
  {
    return {0.0, 0.0};
  }
  return p.sigma * (p.m * std::pow(y - p.b, p.m - 1) / std::pow(p.delta, p.m));
}

Complex compute_zeta(const PmlProfile &p)
{
  const double w = 1.0 / (p.m + 1);
  return {(1.0 + p.sigma.real() * w) * p.delta, p.sigma.imag() * w * p.delta};
}

namespace
{

// t / (e^{t/2 * s} - 1) with s the relevant part of zeta; +inf when s = 0.
double decay_term(double d, double s)
{
  const double denom = std::expm1(0.5 * d * s);
  if (denom <= 0.0)
  {
    return std::numeric_limits<double>::infinity();
  }
  return d / denom;
}

}  // namespace

double modeling_decay_factor(const ModeTable &modes, const PmlProfile &p)
{
  double f = 0.0;
  for (int j = 0; j < 2; ++j)
  {
    if (modes.delta_minus[j])
    {
      f = std::max(f, decay_term(*modes.delta_minus[j], p.zeta.imag()));
    }
    if (modes.delta_plus[j])
    {
      f = std::max(f, decay_term(*modes.delta_plus[j], p.zeta.real()));
    }
  }
  return f;
}

double modeling_prefactor(const WaveContext &ctx)
{
  const double k1 = ctx.kappa1, k2 = ctx.kappa2;
  const double k1sq = k1 * k1, k2sq = k2 * k2;
  return std::max({12.0 * k2, 16.0 * k2sq * k2sq, 8.0 + 2.0 * k2sq, 16.0 * k2sq * k2 / k1sq,
                   24.0 * (16.0 + k2sq) * (16.0 + k2sq) / k1sq});
}

ModelingConstants modeling_constants(const WaveContext &ctx, const ModeTable &modes,
                                     const PmlProfile &p)
{
  ModelingConstants c;
  c.F = modeling_decay_factor(modes, p) * modeling_prefactor(ctx);
  const double k1sq = ctx.kappa1 * ctx.kappa1;
  c.F_hat = 17.0 * ctx.omega * ctx.omega * c.F / (k1sq * k1sq);
  c.coercivity_ok = c.F <= 0.5 * k1sq;
  return c;
}

PmlProfile calibrate(const WaveContext &ctx, const ModeTable &modes, Complex sigma, int m,
                     double target, const CalibrationOptions &opts)
{
  if (!(target > 0.0))
  {
    throw ParameterError("calibration target must be positive");
  }
  const double sqrt_period = std::sqrt(ctx.period);
  for (double delta = opts.delta_start; delta <= opts.delta_cap; delta *= 2.0)
  {
    const PmlProfile p = make_pml_profile(sigma, delta, m, ctx.gamma_height);
    if (p.zeta.real() < 1.0)
    {
      continue;
    }
    if (modeling_constants(ctx, modes, p).F_hat * sqrt_period <= target)
    {
      return p;
    }
  }
  throw UnreachableTargetError("PML calibration cannot reach F_hat * sqrt(period) <= " +
                               std::to_string(target) + " with delta <= " +
                               std::to_string(opts.delta_cap));
}

Vec2c pml_source(const WaveContext &ctx, const PmlProfile &p, double x, double y)
{
  if (y <= p.b || p.sigma == Complex{0.0, 0.0})
  {
    return Vec2c::Zero();
  }
  const Complex r = rho(p, y);
  const Complex dr = rho_prime(p, y);
  const Vec2c u = incident_field(ctx, x, y);
  const double a = ctx.alpha, b = ctx.beta;
  const double lam = ctx.lambda, mu = ctx.mu, w2 = ctx.omega * ctx.omega;

  // d/dy (rho^{-1} d/dy) acting on e^{-i beta y}.
  const Complex vertical = I * b * dr / (r * r) - b * b / r;
  const double mixed = (lam + mu) * a * b;

  Vec2c g;
  g(0) = (-(lam + 2.0 * mu) * r * a * a + mu * vertical + w2 * r) * u(0) + mixed * u(1);
  g(1) = (-mu * r * a * a + (lam + 2.0 * mu) * vertical + w2 * r) * u(1) + mixed * u(0);
  return g;
}

}  // namespace gratingpml
