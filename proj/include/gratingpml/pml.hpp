// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_PML_HPP
#define GRATINGPML_PML_HPP

#include "gratingpml/types.hpp"
#include "gratingpml/wave_params.hpp"

namespace gratingpml
{

//
// Power-law complex stretching rho(y) = 1 + sigma ((y - b)/delta)^m above the
// interface y = b, and rho = 1 below it.
//
struct PmlProfile
{
  Complex sigma{0.0, 0.0};
  double delta = 1.0;
  int m = 2;
  double b = 0.0;
  Complex zeta{0.0, 0.0};  // integral of rho over [b, b + delta]
};

// Validates Re(sigma) >= 0, Im(sigma) >= 0, delta > 0, m >= 1 and fills zeta.
PmlProfile make_pml_profile(Complex sigma, double delta, int m, double b);

Complex rho(const PmlProfile &p, double y);
Complex rho_prime(const PmlProfile &p, double y);

// Closed form (1 + Re sigma/(m+1)) delta + i (Im sigma/(m+1)) delta.
Complex compute_zeta(const PmlProfile &p);

struct ModelingConstants
{
  double F = 0.0;
  double F_hat = 0.0;  // 17 omega^2 F / kappa1^4
  bool coercivity_ok = false;  // F <= kappa1^2 / 2
};

// Exponential factor max_j(...) of F; exposed so the DtN bound can be examined
// separately from the polynomial prefactor.
double modeling_decay_factor(const ModeTable &modes, const PmlProfile &p);
double modeling_prefactor(const WaveContext &ctx);

ModelingConstants modeling_constants(const WaveContext &ctx, const ModeTable &modes,
                                     const PmlProfile &p);

struct CalibrationOptions
{
  double delta_start = 0.25;
  double delta_cap = 64.0;
};

// Smallest delta on the grid delta_start * 2^k with F_hat sqrt(Lambda) <= target
// and Re(zeta) >= 1. Throws UnreachableTargetError once delta exceeds the cap.
PmlProfile calibrate(const WaveContext &ctx, const ModeTable &modes, Complex sigma, int m,
                     double target, const CalibrationOptions &opts = {});

// g = L u_inc evaluated analytically; identically zero where rho = 1.
Vec2c pml_source(const WaveContext &ctx, const PmlProfile &p, double x, double y);

}  // namespace gratingpml

#endif  // GRATINGPML_PML_HPP
