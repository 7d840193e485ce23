// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_SOLVER_HPP
#define GRATINGPML_SOLVER_HPP

#include <utility>

#include "gratingpml/assembly.hpp"

namespace gratingpml
{

struct SolveReport
{
  double residual_norm = 0.0;    // ||Ax - b|| / ||b|| (absolute when b = 0)
  long fill_in = 0;              // nonzeros in L plus U
  double pivot_growth = 0.0;     // max |U_kk| / max |A_ij|
  double min_pivot_ratio = 0.0;  // min |U_kk| / max |A_ij|
  bool flagged = false;          // residual above the acceptance threshold
};

struct SolverOptions
{
  double pivot_tol = 1e-14;
  double residual_tol = 1e-10;
};

// Sparse LU (UMFPACK, partial pivoting, fill-reducing ordering, no scaling).
// Throws SolverError when a pivot falls below pivot_tol * max|A|.
std::pair<Eigen::VectorXcd, SolveReport> solve(const SparseSystem &system,
                                               const SolverOptions &opts = {});

}  // namespace gratingpml

#endif  // GRATINGPML_SOLVER_HPP
