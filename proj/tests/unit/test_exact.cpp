// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "generators.hpp"
#include "gratingpml/assembly.hpp"
#include "gratingpml/exact.hpp"

using namespace gratingpml;
using gratingpml::testing::Gen;

namespace
{
Mesh refine_uniform(Mesh m, int times)
{
  for (int k = 0; k < times; ++k)
  {
    std::vector<int> all(m.num_triangles());
    std::iota(all.begin(), all.end(), 0);
    m = bisect(m, all);
  }
  return m;
}
}  // namespace

TEST_CASE("normal incidence")
{
  const WaveContext c = derive_context(2.0 * pi, 1.0, 2.0, 0.0, 1.0, 1.0);
  const FlatSolution s = flat_solution(c);
  CHECK(s.R2 == 0.0);
  CHECK(std::abs(s.R1 + 1.0 / c.kappa1) < 1e-15);
}

TEST_CASE("Example-1 coefficients from the direct formula")
{
  const double k1 = 2.0 * pi / std::sqrt(5.0), k2 = 2.0 * pi / std::sqrt(2.0);
  const double st = 0.5, ct = std::sqrt(3.0) / 2.0;
  const double a = k1 * st, b = k1 * ct, b2 = std::sqrt(k2 * k2 - a * a);
  const double d = a * a + b * b2;
  const FlatSolution s = flat_solution(derive_context(2.0 * pi, 1.0, 2.0, pi / 6.0, 1.0, 1.0));
  CHECK(std::abs(s.R1 - (a * st - b2 * ct) / d) < 1e-15);
  CHECK(std::abs(s.R2 - (a * ct + b * st) / d) < 1e-15);
  CHECK(std::abs(s.beta2_0 - b2) < 1e-14);
  CHECK(std::abs(s.energy_identity() - 1.0) <= 1e-12);
  CHECK(std::abs(k1 * k1 * (b * s.R1 * s.R1 + b2 * s.R2 * s.R2) / b - 1.0) <= 1e-12);
}

TEST_CASE("property: energy identity and the clamped surface")
{
  Gen gen(91);
  for (int s = 0; s < 1000; ++s)
  {
    const WaveContext c = gen.admissible(0);
    const FlatSolution f = flat_solution(c);
    CHECK(std::abs(f.energy_identity() - 1.0) <= 1e-12);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k)
    {
      worst = std::max(worst, f.value(gen.uniform(0.0, c.period), 0.0).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("analytic gradient matches finite differences")
{
  Gen gen(92);
  for (int s = 0; s < 100; ++s)
  {
    const WaveContext c = gen.admissible(0);
    const FlatSolution f = flat_solution(c);
    const double x = gen.uniform(0, c.period), y = gen.uniform(0.1, 1.0), h = 1e-6;
    const Mat2c g = f.gradient(x, y);
    const Vec2c dx = (f.value(x + h, y) - f.value(x - h, y)) / (2 * h);
    const Vec2c dy = (f.value(x, y + h) - f.value(x, y - h)) / (2 * h);
    const double scale = 1.0 + g.cwiseAbs().maxCoeff();
    CHECK((g.col(0) - dx).cwiseAbs().maxCoeff() <= 1e-7 * scale);
    CHECK((g.col(1) - dy).cwiseAbs().maxCoeff() <= 1e-7 * scale);
  }
}

TEST_CASE("H1 error of the nodal interpolant halves with h")
{
  const WaveContext c = derive_context(2.0 * pi, 1.0, 2.0, pi / 6.0, 1.0, 1.0);
  const FlatSolution f = flat_solution(c);
  Mesh m = generate_initial(flat_profile(1.0), 1.0, 1.0, 1.0, 0.125);
  auto exact = [&](double x, double y) { return f.value(x, y); };
  double prev = INFINITY;
  for (int level = 0; level < 4; ++level)
  {
    const double e = h1_seminorm_error(m, interpolate(m, exact), f);
    if (level > 0)
    {
      const double ratio = e / prev;
      CHECK(ratio >= 0.4);
      CHECK(ratio <= 0.6);
    }
    CHECK(e < prev);
    prev = e;
    m = refine_uniform(m, 2);
  }
}

TEST_CASE("zero data: zero field has zero error, PML elements are ignored")
{
  WaveContext c = derive_context(2.0 * pi, 1.0, 2.0, pi / 6.0, 1.0, 1.0);
  c.amplitude = 0.0;
  const FlatSolution f = flat_solution(c);
  const Mesh m = generate_initial(flat_profile(1.0), 1.0, 1.0, 1.0, 0.25);
  SolutionField u(m.num_nodes(), Vec2c::Zero());
  CHECK(h1_seminorm_error(m, u, f) == 0.0);
  // garbage strictly above the interface does not count
  for (int i = 0; i < m.num_nodes(); ++i)
  {
    if (m.nodes[i].y > 1.0)
    {
      u[i] = Vec2c(Complex(3.0, 1.0), 2.0);
    }
  }
  CHECK(h1_seminorm_error(m, u, f) == 0.0);
}
