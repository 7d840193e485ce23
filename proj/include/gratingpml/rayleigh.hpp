// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_RAYLEIGH_HPP
#define GRATINGPML_RAYLEIGH_HPP

#include <vector>

#include "gratingpml/assembly.hpp"
#include "gratingpml/mesh.hpp"
#include "gratingpml/pml.hpp"
#include "gratingpml/wave_params.hpp"

namespace gratingpml
{

// Fourier coefficients of the diffracted trace v = u - u_inc on y = b against
// e^{i alpha_n x}, for |n| <= n_max.
struct FourierTrace
{
  int n_max = 0;
  std::vector<Vec2c> coeffs;

  const Vec2c &at(int n) const { return coeffs[n + n_max]; }
};

// Linear piece of a trace on [x0, x1] with end values u0, u1.
struct TraceSegment
{
  double x0, x1;
  Vec2c u0, u1;
};

// Exact per-segment integration. Segments must tile [0, Lambda] without gaps
// (TraceError otherwise). When subtract_incident is set the analytic Fourier
// coefficient of u_inc is removed.
FourierTrace fourier_trace(std::vector<TraceSegment> segments, const WaveContext &ctx,
                           int n_max, bool subtract_incident = true);

// Trace of a nodal field along the GammaInterface edges.
FourierTrace fourier_trace(const Mesh &mesh, const SolutionField &field,
                           const WaveContext &ctx, int n_max);

struct Potentials
{
  int n_max = 0;
  std::vector<Complex> phi1, phi2;  // indexed by n + n_max
};

Potentials recover_potentials(const ModeTable &modes, const FourierTrace &trace);

struct OrderEfficiency
{
  int n = 0;
  bool prop1 = false, prop2 = false;
  Complex r1{0.0, 0.0}, r2{0.0, 0.0};
  double e1 = 0.0, e2 = 0.0;  // zero for evanescent orders
};

// Efficiencies relative to a unit-amplitude incident wave.
struct EfficiencyReport
{
  Complex r0{0.0, 0.0};
  std::vector<OrderEfficiency> orders;
  double total = 0.0;
  double deviation = 0.0;  // |total - 1|
};

EfficiencyReport efficiencies(const WaveContext &ctx, const ModeTable &modes,
                              const Potentials &phi);

// DtN matrix of the unbounded problem for order n.
Mat2c dtn_matrix(const ModeTable &modes, const WaveContext &ctx, int n);

// Layer factors of the truncated problem, evaluated through q_j = e^{i beta_j zeta}
// (|q_j| < 1), which avoids overflow for large zeta.
struct LayerFactors
{
  Complex q1, q2;
  Complex eps1, eps2;      // coth(-i beta_j zeta) - 1
  Complex delta1, delta2;
  Complex eps1_eta;        // eps1 * eta, finite even where eta overflows
  Complex chi, chi_hat;
};

LayerFactors layer_factors(const ModeTable &modes, Complex zeta, int n);

// DtN matrix of the PML-truncated problem. Throws RegimeError when
// |chi_hat| < kappa1^2 / 2.
Mat2c pml_dtn_matrix(const ModeTable &modes, const WaveContext &ctx, const PmlProfile &p,
                     int n);

// M_hat - M without cancellation: every term carries a layer factor, so the
// result stays accurate when the difference is far below the size of M.
Mat2c pml_dtn_difference(const ModeTable &modes, const WaveContext &ctx, const PmlProfile &p,
                         int n);

struct LayerCoefficients
{
  Complex A1, B1, A2, B2;
};

// Closed-form solution of the 4x4 layer system for boundary data v_hat(b).
LayerCoefficients pml_layer_coefficients(const ModeTable &modes, const PmlProfile &p, int n,
                                         const Vec2c &v);

// Largest singular value, closed form.
double spectral_norm(const Mat2c &m);

}  // namespace gratingpml

#endif  // GRATINGPML_RAYLEIGH_HPP
