// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include "gratingpml/wave_params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gratingpml/errors.hpp"

namespace gratingpml
{

WaveContext derive_context(double omega, double lambda, double mu, double theta,
                           double period, double gamma_height)
{
  if (!(omega > 0.0))
  {
    throw ParameterError("omega must be positive, got " + std::to_string(omega));
  }
  if (!(mu > 0.0))
  {
    throw ParameterError("Lame constant mu must be positive, got " + std::to_string(mu));
  }
  if (!(lambda + mu > 0.0))
  {
    throw ParameterError("Lame constants must satisfy lambda + mu > 0");
  }
  if (!(std::abs(theta) < pi / 2))
  {
    throw ParameterError("incident angle must lie in (-pi/2, pi/2), got " +
                         std::to_string(theta));
  }
  if (!(period > 0.0))
  {
    throw ParameterError("grating period must be positive, got " + std::to_string(period));
  }
  if (!std::isfinite(gamma_height))
  {
    throw ParameterError("gamma_height must be finite");
  }

  WaveContext ctx;
  ctx.omega = omega;
  ctx.lambda = lambda;
  ctx.mu = mu;
  ctx.theta = theta;
  ctx.period = period;
  ctx.gamma_height = gamma_height;
  ctx.kappa1 = omega / std::sqrt(lambda + 2.0 * mu);
  ctx.kappa2 = omega / std::sqrt(mu);
  ctx.alpha = ctx.kappa1 * std::sin(theta);
  ctx.beta = ctx.kappa1 * std::cos(theta);
  return ctx;
}

Vec2c incident_field(const WaveContext &ctx, double x, double y)
{
  const Complex phase = ctx.amplitude * std::exp(I * (ctx.alpha * x - ctx.beta * y));
  return Vec2c(std::sin(ctx.theta) * phase, -std::cos(ctx.theta) * phase);
}

Mat2c incident_gradient(const WaveContext &ctx, double x, double y)
{
  const Vec2c u = incident_field(ctx, x, y);
  Mat2c g;
  g.col(0) = I * ctx.alpha * u;
  g.col(1) = -I * ctx.beta * u;
  return g;
}

Complex quasi_periodic_phase(const WaveContext &ctx)
{
  return std::exp(I * (ctx.alpha * ctx.period));
}

Complex vertical_wavenumber(double kappa, double a)
{
  const double d = kappa * kappa - a * a;
  // Explicit branch: never route a negative radicand through complex sqrt.
  if (d >= 0.0)
  {
    return {std::sqrt(d), 0.0};
  }
  return {0.0, std::sqrt(-d)};
}

bool ModeTable::propagating(int species, int n) const
{
  const auto &set = species == 1 ? U1 : U2;
  return std::find(set.begin(), set.end(), n) != set.end();
}

ModeTable build_mode_table(const WaveContext &ctx, int n_max, double resonance_tol)
{
  if (n_max < 0)
  {
    throw ParameterError("n_max must be non-negative");
  }
  ModeTable t;
  t.n_max = n_max;
  const int size = 2 * n_max + 1;
  t.alpha_n.resize(size);
  t.beta1_n.resize(size);
  t.beta2_n.resize(size);
  t.chi_n.resize(size);
  t.delta1_n.resize(size);
  t.delta2_n.resize(size);

  const double kappa[2] = {ctx.kappa1, ctx.kappa2};
  const double step = 2.0 * pi / ctx.period;
  for (int n = -n_max; n <= n_max; ++n)
  {
    const int s = t.slot(n);
    const double an = ctx.alpha + n * step;
    for (int j = 0; j < 2; ++j)
    {
      if (std::abs(kappa[j] - std::abs(an)) <= resonance_tol * kappa[j])
      {
        throw ResonanceError(j + 1, n,
                             "resonance: |alpha_n| equals kappa_" + std::to_string(j + 1) +
                               " for order n = " + std::to_string(n));
      }
    }
    t.alpha_n[s] = an;
    t.beta1_n[s] = vertical_wavenumber(ctx.kappa1, an);
    t.beta2_n[s] = vertical_wavenumber(ctx.kappa2, an);
    t.chi_n[s] = an * an + t.beta1_n[s] * t.beta2_n[s];
    t.delta1_n[s] = std::sqrt(std::abs(ctx.kappa1 * ctx.kappa1 - an * an));
    t.delta2_n[s] = std::sqrt(std::abs(ctx.kappa2 * ctx.kappa2 - an * an));
    if (std::abs(an) < ctx.kappa1)
    {
      t.U1.push_back(n);
    }
    if (std::abs(an) < ctx.kappa2)
    {
      t.U2.push_back(n);
    }
  }

  // The window must contain every propagating order, otherwise efficiencies
  // and the minima Delta_j^- are silently wrong.
  const double edge_lo = std::abs(ctx.alpha - (n_max + 1) * step);
  const double edge_hi = std::abs(ctx.alpha + (n_max + 1) * step);
  if (std::min(edge_lo, edge_hi) < ctx.kappa2)
  {
    throw ParameterError("truncation order n_max = " + std::to_string(n_max) +
                         " does not contain every propagating order");
  }

  for (int j = 0; j < 2; ++j)
  {
    const auto &deltas = j == 0 ? t.delta1_n : t.delta2_n;
    for (int n = -n_max; n <= n_max; ++n)
    {
      const bool prop = std::abs(t.alpha_n[t.slot(n)]) < kappa[j];
      auto &target = prop ? t.delta_minus[j] : t.delta_plus[j];
      const double d = deltas[t.slot(n)];
      target = target ? std::min(*target, d) : d;
    }
  }
  return t;
}

}  // namespace gratingpml
