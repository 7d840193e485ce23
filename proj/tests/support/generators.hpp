// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

// Hand-rolled generators shared by the unit and acceptance tests.

#ifndef GRATINGPML_TESTS_GENERATORS_HPP
#define GRATINGPML_TESTS_GENERATORS_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "gratingpml/errors.hpp"
#include "gratingpml/types.hpp"
#include "gratingpml/wave_params.hpp"

namespace gratingpml::testing
{

class Gen
{
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Complex complex(double scale = 1.0)
  {
    return {uniform(-scale, scale), uniform(-scale, scale)};
  }
  Vec2c vec2c(double scale = 1.0) { return {complex(scale), complex(scale)}; }

  // Parameters away from Rayleigh resonances; theta within (-80, 80) degrees.
  struct Raw
  {
    double omega, lambda, mu, theta, period;
  };
  Raw raw()
  {
    return {uniform(0.5, 4.0 * pi), uniform(0.1, 4.0), uniform(0.1, 4.0),
            uniform(-80.0, 80.0) * pi / 180.0, uniform(0.5, 2.0)};
  }

  // Context with a mode table that builds without a resonance or window error.
  // Retries draw fresh parameters; `rejected` counts them.
  WaveContext admissible(int n_max, int *rejected = nullptr)
  {
    for (;;)
    {
      const Raw r = raw();
      try
      {
        WaveContext ctx = derive_context(r.omega, r.lambda, r.mu, r.theta, r.period, 1.0);
        (void)build_mode_table(ctx, n_max);
        return ctx;
      }
      catch (const ParameterError &)
      {
        if (rejected)
        {
          ++*rejected;
        }
      }
    }
  }

  std::mt19937_64 &engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

}  // namespace gratingpml::testing

#endif  // GRATINGPML_TESTS_GENERATORS_HPP
