// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "gratingpml/errors.hpp"
#include "gratingpml/wave_params.hpp"

using namespace gratingpml;
using gratingpml::testing::Gen;

namespace
{
WaveContext example1(double theta = pi / 6.0)
{
  return derive_context(2.0 * pi, 1.0, 2.0, theta, 1.0, 1.0);
}
}  // namespace

TEST_CASE("derive_context reproduces the example-1 wavenumbers")
{
  const WaveContext c = example1();
  CHECK(c.kappa1 == doctest::Approx(2.0 * pi / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(c.kappa2 == doctest::Approx(2.0 * pi / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(c.alpha == doctest::Approx(pi / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(c.beta == doctest::Approx(c.kappa1 * std::cos(pi / 6.0)).epsilon(1e-14));
}

TEST_CASE("normal incidence has alpha = 0")
{
  const WaveContext c = example1(0.0);
  CHECK(c.alpha == 0.0);
  CHECK(c.beta == doctest::Approx(c.kappa1).epsilon(1e-15));
}

TEST_CASE("hand-evaluated wavenumbers")
{
  const WaveContext c = derive_context(1.0, 0.5, 1.0, pi / 4.0, 2.0, 0.5);
  CHECK(c.kappa1 == doctest::Approx(1.0 / std::sqrt(2.5)).epsilon(1e-14));
  CHECK(c.kappa2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.gamma_height == 0.5);
}

TEST_CASE("parameter domain errors")
{
  CHECK_THROWS_AS(derive_context(0.0, 1, 2, 0, 1, 1), ParameterError);
  CHECK_THROWS_AS(derive_context(1.0, 1, 0, 0, 1, 1), ParameterError);
  CHECK_THROWS_AS(derive_context(1.0, -2, 2, 0, 1, 1), ParameterError);
  CHECK_THROWS_AS(derive_context(1.0, 1, 2, pi / 2, 1, 1), ParameterError);
  CHECK_THROWS_AS(derive_context(1.0, 1, 2, 0, 0, 1), ParameterError);
}

TEST_CASE("incident field is a plane wave with the stated polarization")
{
  const WaveContext c = example1();
  const Vec2c u = incident_field(c, 0.3, 0.7);
  const Complex ph = std::exp(I * (c.alpha * 0.3 - c.beta * 0.7));
  CHECK(std::abs(u(0) - std::sin(c.theta) * ph) < 1e-15);
  CHECK(std::abs(u(1) + std::cos(c.theta) * ph) < 1e-15);
  // Jacobian against central differences
  const double h = 1e-6;
  const Mat2c g = incident_gradient(c, 0.3, 0.7);
  const Vec2c dx = (incident_field(c, 0.3 + h, 0.7) - incident_field(c, 0.3 - h, 0.7)) / (2 * h);
  const Vec2c dy = (incident_field(c, 0.3, 0.7 + h) - incident_field(c, 0.3, 0.7 - h)) / (2 * h);
  CHECK((g.col(0) - dx).norm() < 1e-8);
  CHECK((g.col(1) - dy).norm() < 1e-8);
}

TEST_CASE("vertical wavenumber branch")
{
  CHECK(vertical_wavenumber(2.0, 1.0) == Complex(std::sqrt(3.0), 0.0));
  CHECK(vertical_wavenumber(1.0, 2.0) == Complex(0.0, std::sqrt(3.0)));
  CHECK(vertical_wavenumber(1.0, -2.0) == Complex(0.0, std::sqrt(3.0)));
}

TEST_CASE("mode table at n_max = 0 for example 1")
{
  const WaveContext c = example1();
  const ModeTable m = build_mode_table(c, 0);
  CHECK(m.size() == 1);
  CHECK(std::abs(m.beta(1, 0) - c.beta) <= 1e-12 * c.beta);
  CHECK(m.beta(2, 0).imag() == 0.0);
  CHECK(m.beta(2, 0).real() ==
        doctest::Approx(std::sqrt(c.kappa2 * c.kappa2 - c.alpha * c.alpha)).epsilon(1e-14));
}

TEST_CASE("mode table sign structure and chi bounds at n_max = 50")
{
  const WaveContext c = example1();
  const ModeTable m = build_mode_table(c, 50);
  CHECK(m.propagating(1, 0));
  CHECK(m.propagating(2, 0));
  for (int n = -50; n <= 50; ++n)
  {
    for (int j = 1; j <= 2; ++j)
    {
      const Complex b = m.beta(j, n);
      if (m.propagating(j, n))
      {
        CHECK(b.real() > 0.0);
        CHECK(b.imag() == 0.0);
      }
      else
      {
        CHECK(b.real() == 0.0);
        CHECK(b.imag() > 0.0);
      }
    }
    if (std::abs(m.alpha(n)) > c.kappa2)
    {
      CHECK(m.chi(n).imag() == 0.0);
      CHECK(m.chi(n).real() == doctest::Approx(m.alpha(n) * m.alpha(n) -
                                                m.delta(1, n) * m.delta(2, n)));
    }
    const double chi = std::abs(m.chi(n));
    CHECK(chi > c.kappa1 * c.kappa1);
    CHECK(chi < c.kappa2 * c.kappa2);
  }
}

TEST_CASE("resonance is reported with species and order")
{
  // alpha_1 = kappa1 exactly: theta chosen so alpha + 2 pi / Lambda = kappa1.
  const double omega = 2.0 * pi, lam = 1.0, mu = 2.0;
  const double k1 = omega / std::sqrt(lam + 2 * mu);
  const double period = 2.0 * pi / (k1 - k1 * std::sin(-0.3));
  const WaveContext c = derive_context(omega, lam, mu, -0.3, period, 1.0);
  try
  {
    (void)build_mode_table(c, 5);
    FAIL("expected a resonance error");
  }
  catch (const ResonanceError &e)
  {
    CHECK(e.species() == 1);
    CHECK(e.order() == 1);
  }
}

TEST_CASE("property: mode table mirrors under n -> -n with theta -> -theta")
{
  Gen gen(11);
  for (int s = 0; s < 200; ++s)
  {
    const WaveContext c = gen.admissible(20);
    const WaveContext r =
      derive_context(c.omega, c.lambda, c.mu, -c.theta, c.period, c.gamma_height);
    const ModeTable a = build_mode_table(c, 20), b = build_mode_table(r, 20);
    for (int n = -20; n <= 20; ++n)
    {
      CHECK(a.alpha(n) == doctest::Approx(-b.alpha(-n)).epsilon(1e-12));
      CHECK(std::abs(a.beta(1, n) - b.beta(1, -n)) <= 1e-10 * std::abs(a.beta(1, n)) + 1e-12);
      CHECK(std::abs(a.beta(2, n) - b.beta(2, -n)) <= 1e-10 * std::abs(a.beta(2, n)) + 1e-12);
    }
  }
}

TEST_CASE("property: alpha^2 + beta^2 = kappa1^2 and kappa1 < kappa2")
{
  Gen gen(12);
  for (int s = 0; s < 1000; ++s)
  {
    const auto r = gen.raw();
    const WaveContext c = derive_context(r.omega, r.lambda, r.mu, r.theta, r.period, 1.0);
    CHECK(std::abs(c.alpha * c.alpha + c.beta * c.beta - c.kappa1 * c.kappa1) <=
          1e-12 * c.kappa1 * c.kappa1);
    CHECK(c.kappa1 < c.kappa2);
  }
}

TEST_CASE("quasi-periodic phase has unit modulus")
{
  const WaveContext c = example1();
  const Complex ph = quasi_periodic_phase(c);
  CHECK(std::abs(std::abs(ph) - 1.0) < 1e-14);
  CHECK(std::abs(ph - std::exp(I * pi / std::sqrt(5.0))) < 1e-14);
}
