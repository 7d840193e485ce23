// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include "gratingpml/rayleigh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gratingpml/errors.hpp"

namespace gratingpml
{

namespace
{

// E0(z) = int_0^1 e^{-izs} ds, E1(z) = int_0^1 s e^{-izs} ds.
void segment_moments(double z, Complex &e0, Complex &e1)
{
  if (std::abs(z) < 1e-6)
  {
    e0 = Complex(1.0 - z * z / 6.0, -z / 2.0);
    e1 = Complex(0.5 - z * z / 8.0, -z / 3.0);
    return;
  }
  const Complex emz = std::exp(-I * z);
  e0 = (1.0 - emz) / (I * z);
  e1 = (emz * (1.0 + I * z) - 1.0) / (z * z);
}

}  // namespace

FourierTrace fourier_trace(std::vector<TraceSegment> segments, const WaveContext &ctx,
                           int n_max, bool subtract_incident)
{
  if (segments.empty())
  {
    throw TraceError("no trace segments on the interface");
  }
  for (auto &s : segments)
  {
    if (s.x1 < s.x0)
    {
      std::swap(s.x0, s.x1);
      std::swap(s.u0, s.u1);
    }
  }
  std::sort(segments.begin(), segments.end(),
            [](const TraceSegment &a, const TraceSegment &b) { return a.x0 < b.x0; });
  const double tol = 1e-12 * ctx.period;
  double reach = 0.0;
  for (const auto &s : segments)
  {
    if (std::abs(s.x0 - reach) > tol)
    {
      throw TraceError("interface trace has a gap or overlap near x = " + std::to_string(reach));
    }
    reach = s.x1;
  }
  if (std::abs(reach - ctx.period) > tol)
  {
    throw TraceError("interface trace stops at x = " + std::to_string(reach) +
                     " before the end of the period");
  }

  FourierTrace tr;
  tr.n_max = n_max;
  tr.coeffs.assign(2 * n_max + 1, Vec2c::Zero());
  for (int n = -n_max; n <= n_max; ++n)
  {
    const double an = ctx.alpha + 2.0 * pi * n / ctx.period;
    Vec2c acc = Vec2c::Zero();
    for (const auto &s : segments)
    {
      const double h = s.x1 - s.x0;
      Complex e0, e1;
      segment_moments(an * h, e0, e1);
      acc += (h * std::exp(-I * (an * s.x0))) * (s.u0 * e0 + (s.u1 - s.u0) * e1);
    }
    acc /= ctx.period;
    if (subtract_incident && n == 0)
    {
      acc -= incident_field(ctx, 0.0, ctx.gamma_height);
    }
    tr.coeffs[n + n_max] = acc;
  }
  return tr;
}

FourierTrace fourier_trace(const Mesh &mesh, const SolutionField &field,
                           const WaveContext &ctx, int n_max)
{
  std::vector<TraceSegment> segs;
  for (const auto &e : mesh.edges)
  {
    if (e.tag == BoundaryTag::GammaInterface)
    {
      segs.push_back({mesh.nodes[e.a].x, mesh.nodes[e.b].x, field[e.a], field[e.b]});
    }
  }
  return fourier_trace(std::move(segs), ctx, n_max, true);
}

Potentials recover_potentials(const ModeTable &modes, const FourierTrace &trace)
{
  if (trace.n_max > modes.n_max)
  {
    throw ParameterError("mode table is narrower than the Fourier trace");
  }
  Potentials p;
  p.n_max = trace.n_max;
  p.phi1.resize(trace.coeffs.size());
  p.phi2.resize(trace.coeffs.size());
  for (int n = -trace.n_max; n <= trace.n_max; ++n)
  {
    const Vec2c &v = trace.at(n);
    const double an = modes.alpha(n);
    const Complex b1 = modes.beta(1, n), b2 = modes.beta(2, n);
    const Complex f = -I / modes.chi(n);
    p.phi1[n + p.n_max] = f * (an * v(0) + b2 * v(1));
    p.phi2[n + p.n_max] = f * (b1 * v(0) - an * v(1));
  }
  return p;
}

EfficiencyReport efficiencies(const WaveContext &ctx, const ModeTable &modes,
                              const Potentials &phi)
{
  EfficiencyReport rep;
  rep.r0 = -I / ctx.kappa1;
  const double norm0 = ctx.beta * std::norm(rep.r0);
  const double b = ctx.gamma_height;
  for (int n = -phi.n_max; n <= phi.n_max; ++n)
  {
    OrderEfficiency o;
    o.n = n;
    o.prop1 = modes.propagating(1, n);
    o.prop2 = modes.propagating(2, n);
    if (!o.prop1 && !o.prop2)
    {
      continue;
    }
    const Complex b1 = modes.beta(1, n), b2 = modes.beta(2, n);
    o.r1 = phi.phi1[n + phi.n_max] * std::exp(-I * b1 * b);
    o.r2 = phi.phi2[n + phi.n_max] * std::exp(-I * b2 * b);
    if (o.prop1)
    {
      o.e1 = b1.real() * std::norm(o.r1) / norm0;
    }
    if (o.prop2)
    {
      o.e2 = b2.real() * std::norm(o.r2) / norm0;
    }
    rep.total += o.e1 + o.e2;
    rep.orders.push_back(o);
  }
  rep.deviation = std::abs(rep.total - 1.0);
  return rep;
}

Mat2c dtn_matrix(const ModeTable &modes, const WaveContext &ctx, int n)
{
  const double an = modes.alpha(n);
  const Complex b1 = modes.beta(1, n), b2 = modes.beta(2, n), chi = modes.chi(n);
  const double w2 = ctx.omega * ctx.omega;
  Mat2c m;
  m << w2 * b1, ctx.mu * an * chi - w2 * an, w2 * an - ctx.mu * an * chi, w2 * b2;
  return (I / chi) * m;
}

LayerFactors layer_factors(const ModeTable &modes, Complex zeta, int n)
{
  LayerFactors f;
  const double an = modes.alpha(n);
  const Complex b1 = modes.beta(1, n), b2 = modes.beta(2, n);
  f.q1 = std::exp(I * b1 * zeta);
  f.q2 = std::exp(I * b2 * zeta);
  const Complex d1 = 1.0 - f.q1 * f.q1, d2 = 1.0 - f.q2 * f.q2;
  f.eps1 = 2.0 * f.q1 * f.q1 / d1;
  f.eps2 = 2.0 * f.q2 * f.q2 / d2;
  f.delta1 = f.q1 * (f.q2 - f.q1) / d1;
  f.delta2 = f.q2 * (f.q2 - f.q1) / d2;
  f.eps1_eta = 2.0 * f.q1 * f.q2 / d2;
  f.chi = modes.chi(n);
  f.chi_hat = f.chi + 4.0 * (f.delta2 - f.delta1 - f.delta1 * f.delta2) * an * an * b1 * b2 / f.chi;
  return f;
}

Mat2c pml_dtn_matrix(const ModeTable &modes, const WaveContext &ctx, const PmlProfile &p,
                     int n)
{
  const LayerFactors f = layer_factors(modes, p.zeta, n);
  if (std::abs(f.chi_hat) < 0.5 * ctx.kappa1 * ctx.kappa1)
  {
    throw RegimeError("|chi_hat| fell below kappa1^2/2 for order " + std::to_string(n) +
                      "; PML parameters are outside the admissible regime");
  }
  const double an = modes.alpha(n);
  const Complex b1 = modes.beta(1, n), b2 = modes.beta(2, n);
  const double w2 = ctx.omega * ctx.omega;
  const Complex lead = I * w2 / f.chi_hat;
  const Complex c = I * w2 / (f.chi * f.chi_hat);
  const Complex e = f.eps1, ee = f.eps1_eta, d1 = f.delta1, d2 = f.delta2;
  const Complex b12 = b1 * b2;
  Mat2c m;
  m(0, 0) = lead * b1 + c * b1 * (e * an * an + (ee + 2.0 * d2) * b12);
  m(0, 1) = I * ctx.mu * an - lead * an - c * an * b12 * (e * (1.0 + 2.0 * d2) - ee + 2.0 * d2);
  m(1, 0) = -I * ctx.mu * an + lead * an -
            c * an * b12 * (e * (1.0 + 2.0 * d2) - ee + 2.0 * (2.0 * d1 + 2.0 * d1 * d2 - d2));
  m(1, 1) = lead * b2 + c * b2 * (e * b12 + (ee + 2.0 * d2) * an * an);
  return m;
}

Mat2c pml_dtn_difference(const ModeTable &modes, const WaveContext &ctx, const PmlProfile &p,
                         int n)
{
  const LayerFactors f = layer_factors(modes, p.zeta, n);
  if (std::abs(f.chi_hat) < 0.5 * ctx.kappa1 * ctx.kappa1)
  {
    throw RegimeError("|chi_hat| fell below kappa1^2/2 for order " + std::to_string(n) +
                      "; PML parameters are outside the admissible regime");
  }
  const double an = modes.alpha(n);
  const Complex b1 = modes.beta(1, n), b2 = modes.beta(2, n);
  const Complex c = I * ctx.omega * ctx.omega / (f.chi * f.chi_hat);
  const Complex e = f.eps1, ee = f.eps1_eta, d1 = f.delta1, d2 = f.delta2;
  const Complex b12 = b1 * b2;
  // chi_hat - chi, formed from the layer factors rather than by subtraction
  const Complex shift = 4.0 * (d2 - d1 - d1 * d2) * an * an * b12 / f.chi;
  const Complex cross = e * (1.0 + 2.0 * d2) - ee;
  Mat2c m;
  m(0, 0) = c * b1 * (-shift + e * an * an + (ee + 2.0 * d2) * b12);
  m(0, 1) = c * an * (shift - b12 * (cross + 2.0 * d2));
  m(1, 0) = c * an * (-shift - b12 * (cross + 4.0 * d1 + 4.0 * d1 * d2 - 2.0 * d2));
  m(1, 1) = c * b2 * (-shift + e * b12 + (ee + 2.0 * d2) * an * an);
  return m;
}

LayerCoefficients pml_layer_coefficients(const ModeTable &modes, const PmlProfile &p, int n,
                                         const Vec2c &v)
{
  const LayerFactors f = layer_factors(modes, p.zeta, n);
  const double a = modes.alpha(n);
  const Complex b1 = modes.beta(1, n), b2 = modes.beta(2, n);
  const Complex e = f.eps1, ee = f.eps1_eta, d1 = f.delta1, d2 = f.delta2, chi = f.chi;
  const Complex pre = I / (2.0 * chi * f.chi_hat);
  const Complex v1 = v(0), v2 = v(1);
  LayerCoefficients c;
  c.A1 = pre * (-chi * (e + 2.0) * (a * v1 + b2 * v2) +
                2.0 * b2 * ((e + 2.0 * d1) * (1.0 + d2) - ee - 2.0 * d2) *
                  (a * b1 * v1 + a * a * v2));
  c.B1 = pre * (chi * e * (a * v1 - b2 * v2) +
                2.0 * (e * d2 + 2.0 * (d1 + d1 * d2)) * (a * b1 * b2 * v1 - a * a * b2 * v2));
  c.A2 = pre * (chi * (ee - 2.0 * (e + 1.0) * (1.0 + d2)) * (b1 * v1 - a * v2) +
                2.0 * (e * (1.0 + d2) - ee) * (b1 * b1 * b2 * v1 - a * a * a * v2));
  c.B2 = pre * (chi * (2.0 * d2 * (e + 1.0) - ee) * (b1 * v1 + a * v2) -
                2.0 * d2 * (e + 2.0) * (b1 * b1 * b2 * v1 + a * a * a * v2));
  return c;
}

double spectral_norm(const Mat2c &m)
{
  const double fro2 = m.squaredNorm();
  const double det = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  const double disc = std::max(0.0, fro2 * fro2 - 4.0 * det * det);
  return std::sqrt(0.5 * (fro2 + std::sqrt(disc)));
}

}  // namespace gratingpml
