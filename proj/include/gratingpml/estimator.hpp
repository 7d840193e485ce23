// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_ESTIMATOR_HPP
#define GRATINGPML_ESTIMATOR_HPP

#include <vector>

#include "gratingpml/assembly.hpp"
#include "gratingpml/mesh.hpp"
#include "gratingpml/pml.hpp"
#include "gratingpml/wave_params.hpp"

namespace gratingpml
{

// Weighted: conormal flux of the discrete form, sigma(u) nu with the rho and
// 1/rho weights of the stretched operator. Literal: mu d_nu u + (lambda + mu)
// (div u) nu on interior edges, with the stretched divergence on periodic ones.
// Both agree wherever rho = 1.
enum class JumpFlux
{
  Weighted,
  Literal
};

struct EstimatorOptions
{
  JumpFlux flux = JumpFlux::Weighted;
  int quad_degree = 5;
  int threads = 1;
};

struct ErrorIndicators
{
  std::vector<double> eta_T;
  std::vector<double> eta_hat_T;
  std::vector<double> residual_T;  // ||R_T||
  std::vector<double> jump_e;      // ||J_e|| per edge, zero on S and Gamma^PML
  double global_eta = 0.0;         // (sum eta_T^2)^{1/2}
  double top_trace_error = 0.0;    // ||u_h - u_inc|| on Gamma^PML
  double interface_trace = 0.0;    // ||u_h - u_inc|| on Gamma
  double eps_fem = 0.0;
  double eps_pml = 0.0;
};

// P1 gradient on triangle t: entry (c, k) is d u_c / d x_k.
Mat2c element_gradient(const Mesh &mesh, int t, const SolutionField &u);

// L2 norm of the strong residual on triangle t. In the PML this is
// L(u_h - u_inc), including the rho' terms acting on the linear field.
double element_residual(const Mesh &mesh, int t, const SolutionField &u,
                        const WaveContext &ctx, const PmlProfile &p, int quad_degree = 5);

std::vector<double> jump_residuals(const Mesh &mesh, const SolutionField &u,
                                   const WaveContext &ctx, const PmlProfile &p,
                                   JumpFlux flux = JumpFlux::Weighted);

ErrorIndicators indicators(const Mesh &mesh, const SolutionField &u, const WaveContext &ctx,
                           const PmlProfile &p, double f_hat,
                           const EstimatorOptions &opts = {});

}  // namespace gratingpml

#endif  // GRATINGPML_ESTIMATOR_HPP
