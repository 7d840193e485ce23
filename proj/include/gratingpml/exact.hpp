// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_EXACT_HPP
#define GRATINGPML_EXACT_HPP

#include "gratingpml/assembly.hpp"
#include "gratingpml/mesh.hpp"
#include "gratingpml/wave_params.hpp"

namespace gratingpml
{

// Closed-form total field above the clamped flat surface y = 0:
// incident wave plus one reflected compressional and one reflected shear wave.
struct FlatSolution
{
  WaveContext ctx;
  double beta2_0 = 0.0;  // (kappa2^2 - alpha^2)^{1/2}
  double R1 = 0.0;
  double R2 = 0.0;

  Vec2c value(double x, double y) const;
  Mat2c gradient(double x, double y) const;  // (c, k) = d u_c / d x_k

  // kappa1^2 (beta |R1|^2 + beta2_0 |R2|^2) / beta, equal to 1.
  double energy_identity() const;
};

FlatSolution flat_solution(const WaveContext &ctx);

// ||grad(u - u_h)||_F over the physical region, degree-5 quadrature.
double h1_seminorm_error(const Mesh &mesh, const SolutionField &u, const FlatSolution &exact,
                         int quad_degree = 5);

}  // namespace gratingpml

#endif  // GRATINGPML_EXACT_HPP
