// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "gratingpml/errors.hpp"
#include "gratingpml/pml.hpp"
#include "gratingpml/quadrature.hpp"

using namespace gratingpml;
using gratingpml::testing::Gen;

namespace
{
WaveContext example1() { return derive_context(2.0 * pi, 1.0, 2.0, pi / 6.0, 1.0, 1.0); }

// Navier operator with stretching, applied by central differences to u_inc.
Vec2c fd_operator(const WaveContext &c, const PmlProfile &p, double x, double y, double h)
{
  auto u = [&](double xx, double yy) { return incident_field(c, xx, yy); };
  auto r = [&](double yy) { return rho(p, yy); };
  const double l2m = c.lambda + 2 * c.mu, lpm = c.lambda + c.mu, mu = c.mu;
  auto dx = [&](double xx, double yy) { return Vec2c((u(xx + h, yy) - u(xx - h, yy)) / (2 * h)); };
  auto dy = [&](double xx, double yy) { return Vec2c((u(xx, yy + h) - u(xx, yy - h)) / (2 * h)); };
  // rho dx( . ) and dy(rho^-1 dy .) as flux differences
  const Vec2c uxx = (u(x + h, y) - 2.0 * u(x, y) + u(x - h, y)) / (h * h);
  const Vec2c fy_up = (u(x, y + h) - u(x, y)) / (h * r(y + 0.5 * h));
  const Vec2c fy_dn = (u(x, y) - u(x, y - h)) / (h * r(y - 0.5 * h));
  const Vec2c dyy = (fy_up - fy_dn) / h;
  const Vec2c uxy = (dx(x, y + h) - dx(x, y - h)) / (2 * h);
  (void)dy;
  Vec2c g;
  g(0) = l2m * r(y) * uxx(0) + mu * dyy(0) + lpm * uxy(1) + c.omega * c.omega * r(y) * u(x, y)(0);
  g(1) = mu * r(y) * uxx(1) + l2m * dyy(1) + lpm * uxy(0) + c.omega * c.omega * r(y) * u(x, y)(1);
  return g;
}
}  // namespace

TEST_CASE("rho and its derivative")
{
  const PmlProfile p = make_pml_profile({3.0, 3.0}, 1.0, 2, 1.0);
  CHECK(rho(p, 0.5) == Complex(1.0, 0.0));
  CHECK(std::abs(rho(p, 2.0) - Complex(4.0, 3.0)) < 1e-15);
  CHECK(std::abs(rho(p, 1.5) - (1.0 + Complex(3.0, 3.0) / 4.0)) < 1e-15);
  CHECK(rho_prime(p, 0.9) == Complex(0.0, 0.0));
  CHECK(std::abs(rho_prime(p, 1.5) - Complex(3.0, 3.0)) < 1e-15);
}

TEST_CASE("zeta closed forms")
{
  CHECK(std::abs(make_pml_profile({0.0, 0.0}, 2.5, 3, 0.0).zeta - Complex(2.5, 0.0)) < 1e-15);
  CHECK(std::abs(make_pml_profile({3.0, 3.0}, 1.0, 2, 0.0).zeta - Complex(2.0, 1.0)) < 1e-15);
  CHECK(std::abs(make_pml_profile({0.0, 2.0}, 2.0, 1, 0.0).zeta - Complex(2.0, 2.0)) < 1e-15);
}

TEST_CASE("property: zeta equals the integral of rho")
{
  Gen gen(21);
  const auto rule = quad::gauss_legendre(12);
  for (int s = 0; s < 200; ++s)
  {
    const PmlProfile p = make_pml_profile({gen.uniform(0, 30), gen.uniform(0.01, 30)},
                                          gen.uniform(0.1, 10), gen.integer(1, 6),
                                          gen.uniform(-1, 2));
    Complex acc = 0.0;
    for (const auto &q : rule)
    {
      acc += q.weight * rho(p, p.b + q.t * p.delta);
    }
    acc *= p.delta;
    CHECK(std::abs(acc - p.zeta) <= 1e-12 * std::abs(p.zeta));
  }
}

TEST_CASE("invalid profiles are rejected")
{
  CHECK_THROWS_AS(make_pml_profile({-1.0, 1.0}, 1.0, 2, 0.0), ParameterError);
  CHECK_THROWS_AS(make_pml_profile({1.0, 1.0}, 0.0, 2, 0.0), ParameterError);
  CHECK_THROWS_AS(make_pml_profile({1.0, 1.0}, 1.0, 0, 0.0), ParameterError);
}

TEST_CASE("modeling constants match a term-by-term evaluation")
{
  const WaveContext c = example1();
  const ModeTable modes = build_mode_table(c, 20);
  const PmlProfile p = make_pml_profile({12.0, 12.0}, 2.0, 2, 1.0);
  // independent evaluation
  double decay = 0.0;
  for (int j = 1; j <= 2; ++j)
  {
    const double k = j == 1 ? c.kappa1 : c.kappa2;
    double dminus = INFINITY, dplus = INFINITY;
    for (int n = -20; n <= 20; ++n)
    {
      const double an = c.alpha + 2 * pi * n;
      const double d = std::sqrt(std::abs(k * k - an * an));
      (std::abs(an) < k ? dminus : dplus) = std::min(std::abs(an) < k ? dminus : dplus, d);
    }
    decay = std::max(decay, dminus / (std::exp(dminus * p.zeta.imag() / 2) - 1));
    decay = std::max(decay, dplus / (std::exp(dplus * p.zeta.real() / 2) - 1));
  }
  const double k1 = c.kappa1, k2 = c.kappa2;
  const double pre = std::max({12 * k2, 16 * std::pow(k2, 4), 8 + 2 * k2 * k2,
                               16 * std::pow(k2, 3) / (k1 * k1),
                               24 * std::pow(16 + k2 * k2, 2) / (k1 * k1)});
  const ModelingConstants mc = modeling_constants(c, modes, p);
  CHECK(mc.F == doctest::Approx(decay * pre).epsilon(1e-12));
  CHECK(mc.F_hat == doctest::Approx(17 * c.omega * c.omega * decay * pre / std::pow(k1, 4))
                      .epsilon(1e-12));
}

TEST_CASE("F decreases with thickness")
{
  const WaveContext c = example1();
  const ModeTable modes = build_mode_table(c, 20);
  double prev = INFINITY;
  for (double d : {1.0, 2.0, 4.0, 8.0})
  {
    const double f = modeling_constants(c, modes, make_pml_profile({12.0, 12.0}, d, 2, 1.0)).F;
    CHECK(f < prev);
    prev = f;
  }
}

TEST_CASE("property: F_hat strictly decreasing in delta")
{
  Gen gen(22);
  for (int s = 0; s < 100; ++s)
  {
    const WaveContext c = gen.admissible(20);
    const ModeTable modes = build_mode_table(c, 20);
    const Complex sigma(gen.uniform(0, 20), gen.uniform(0.5, 20));
    const int m = gen.integer(1, 4);
    double prev = INFINITY;
    for (double d = 0.25; d <= 4.0; d *= 2)
    {
      const double f = modeling_constants(c, modes, make_pml_profile(sigma, d, m, 1.0)).F_hat;
      CHECK(f < prev);
      prev = f;
    }
  }
}

TEST_CASE("calibration on example 1")
{
  const WaveContext c = example1();
  const ModeTable modes = build_mode_table(c, 20);
  const PmlProfile p = calibrate(c, modes, {12.0, 12.0}, 2, 1e-8);
  CHECK(modeling_constants(c, modes, p).F_hat * std::sqrt(c.period) <= 1e-8);
  CHECK(p.zeta.real() >= 1.0);
  // the previous grid point misses the target
  const PmlProfile q = make_pml_profile({12.0, 12.0}, p.delta / 2, 2, 1.0);
  CHECK(modeling_constants(c, modes, q).F_hat > 1e-8);
  // doubling the target never increases delta
  double prev = p.delta;
  for (double t = 2e-8; t < 1e3; t *= 2)
  {
    const double d = calibrate(c, modes, {12.0, 12.0}, 2, t).delta;
    CHECK(d <= prev);
    prev = d;
  }
  CHECK(calibrate(c, modes, {12.0, 12.0}, 2, 1e300).delta == 0.25);
}

TEST_CASE("calibration enforces Re zeta >= 1")
{
  const WaveContext c = example1();
  const ModeTable modes = build_mode_table(c, 20);
  const PmlProfile p = calibrate(c, modes, {0.0, 12.0}, 2, 1e300);
  CHECK(p.zeta.real() >= 1.0);
  CHECK(p.delta == 1.0);
}

TEST_CASE("unreachable target")
{
  const WaveContext c = example1();
  const ModeTable modes = build_mode_table(c, 20);
  CHECK_THROWS_AS(calibrate(c, modes, {12.0, 12.0}, 2, 1e-30, {0.25, 0.25}),
                  UnreachableTargetError);
}

TEST_CASE("PML source vanishes where rho = 1")
{
  const WaveContext c = example1();
  const PmlProfile p = make_pml_profile({12.0, 12.0}, 2.0, 2, 1.0);
  CHECK(pml_source(c, p, 0.3, 1.0).norm() < 1e-12);
  CHECK(pml_source(c, p, 0.3, 0.5).norm() == 0.0);
  const PmlProfile flat = make_pml_profile({0.0, 0.0}, 2.0, 2, 1.0);
  CHECK(pml_source(c, flat, 0.3, 1.7).norm() < 1e-12);
}

TEST_CASE("PML source matches a finite-difference operator")
{
  const WaveContext c = example1();
  const PmlProfile p = make_pml_profile({12.0, 12.0}, 1.0, 2, 1.0);
  const Vec2c g = pml_source(c, p, 0.3, 1.7);
  const Vec2c fd = fd_operator(c, p, 0.3, 1.7, 1e-5);
  CHECK((g - fd).norm() <= 1e-6 * g.norm());
}

TEST_CASE("property: PML source against finite differences at random points")
{
  Gen gen(23);
  for (int s = 0; s < 100; ++s)
  {
    const WaveContext c = gen.admissible(20);
    const PmlProfile p = make_pml_profile({gen.uniform(0, 15), gen.uniform(0.5, 15)},
                                          gen.uniform(0.5, 4), gen.integer(2, 4), 1.0);
    const double x = gen.uniform(0, c.period), y = 1.0 + gen.uniform(0.05, 0.95) * p.delta;
    const Vec2c g = pml_source(c, p, x, y);
    // Richardson-extrapolated stencil, fourth order
    const double h = 2e-3 / std::max(1.0, c.kappa2);
    const Vec2c fd = (4.0 * fd_operator(c, p, x, y, h / 2) - fd_operator(c, p, x, y, h)) / 3.0;
    // relative to the size of the individual terms, since g itself can cancel
    const double scale = c.omega * c.omega * std::abs(rho(p, y)) * incident_field(c, x, y).norm();
    CHECK((g - fd).norm() <= 1e-6 * scale);
  }
}
