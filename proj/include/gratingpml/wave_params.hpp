// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_WAVE_PARAMS_HPP
#define GRATINGPML_WAVE_PARAMS_HPP

#include <optional>
#include <vector>

#include "gratingpml/types.hpp"

namespace gratingpml
{

//
// Scalar description of the elastic medium and the incident compressional wave
// u_inc = [sin(theta), -cos(theta)] exp(i(alpha x - beta y)).
//
struct WaveContext
{
  double omega = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double theta = 0.0;
  double period = 0.0;
  double gamma_height = 0.0;

  // Derived quantities.
  double kappa1 = 0.0;  // compressional wavenumber
  double kappa2 = 0.0;  // shear wavenumber
  double alpha = 0.0;
  double beta = 0.0;

  // Scales u_inc; 0 gives the homogeneous problem.
  double amplitude = 1.0;
};

// Throws ParameterError unless omega > 0, mu > 0, lambda + mu > 0,
// |theta| < pi/2 and period > 0.
WaveContext derive_context(double omega, double lambda, double mu, double theta,
                           double period, double gamma_height);

// Incident plane wave and its Jacobian (row i = component, column k = d/dx_k).
Vec2c incident_field(const WaveContext &ctx, double x, double y);
Mat2c incident_gradient(const WaveContext &ctx, double x, double y);

// e^{i alpha Lambda}, the factor relating the right and left sides of a cell.
Complex quasi_periodic_phase(const WaveContext &ctx);

// Vertical wavenumber (kappa^2 - a^2)^{1/2} on the outgoing branch: positive
// real for |a| < kappa, i (a^2 - kappa^2)^{1/2} otherwise.
Complex vertical_wavenumber(double kappa, double a);

inline constexpr double default_resonance_tol = 1e-8;
inline constexpr int default_n_max = 20;

//
// Rayleigh mode quantities for orders |n| <= n_max. Arrays are indexed by
// n + n_max; use the accessors to index by order.
//
struct ModeTable
{
  int n_max = 0;
  std::vector<double> alpha_n;
  std::vector<Complex> beta1_n, beta2_n;
  std::vector<Complex> chi_n;
  std::vector<double> delta1_n, delta2_n;  // |kappa_j^2 - alpha_n^2|^{1/2}
  std::vector<int> U1, U2;                 // propagating orders per species

  // Minima of delta_j_n over propagating (minus) and evanescent (plus) orders
  // inside the window; empty when the set is empty.
  std::optional<double> delta_minus[2];
  std::optional<double> delta_plus[2];

  int size() const { return 2 * n_max + 1; }
  int slot(int n) const { return n + n_max; }
  double alpha(int n) const { return alpha_n[slot(n)]; }
  Complex beta(int species, int n) const
  {
    return species == 1 ? beta1_n[slot(n)] : beta2_n[slot(n)];
  }
  Complex chi(int n) const { return chi_n[slot(n)]; }
  double delta(int species, int n) const
  {
    return species == 1 ? delta1_n[slot(n)] : delta2_n[slot(n)];
  }
  bool propagating(int species, int n) const;
};

// Throws ResonanceError naming (j, n) when |kappa_j - |alpha_n|| <= tol kappa_j,
// and ParameterError when propagating orders fall outside the window.
ModeTable build_mode_table(const WaveContext &ctx, int n_max = default_n_max,
                           double resonance_tol = default_resonance_tol);

}  // namespace gratingpml

#endif  // GRATINGPML_WAVE_PARAMS_HPP
