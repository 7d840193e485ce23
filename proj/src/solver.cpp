// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include "gratingpml/solver.hpp"

#include <umfpack.h>

#include <string>

#include "gratingpml/errors.hpp"

namespace gratingpml
{

namespace
{

struct Factors
{
  void *symbolic = nullptr;
  void *numeric = nullptr;
  ~Factors()
  {
    if (numeric != nullptr)
    {
      umfpack_zi_free_numeric(&numeric);
    }
    if (symbolic != nullptr)
    {
      umfpack_zi_free_symbolic(&symbolic);
    }
  }
};

[[noreturn]] void fail(const char *stage, int status)
{
  throw SolverError(std::string("sparse LU ") + stage + " failed (UMFPACK status " +
                    std::to_string(status) + ")");
}

}  // namespace

std::pair<Eigen::VectorXcd, SolveReport> solve(const SparseSystem &system,
                                               const SolverOptions &opts)
{
  const auto &a = system.matrix;
  const int n = static_cast<int>(a.rows());
  if (n == 0 || a.cols() != n || system.rhs.size() != n)
  {
    throw SolverError("system must be square, non-empty and match its right-hand side");
  }
  if (!a.isCompressed())
  {
    throw SolverError("system matrix must be in compressed storage");
  }

  double amax = 0.0;
  for (int k = 0; k < a.nonZeros(); ++k)
  {
    amax = std::max(amax, std::abs(a.valuePtr()[k]));
  }
  if (!(amax > 0.0))
  {
    throw SolverError("system matrix is zero");
  }

  double control[UMFPACK_CONTROL], info[UMFPACK_INFO];
  umfpack_zi_defaults(control);
  control[UMFPACK_SCALE] = UMFPACK_SCALE_NONE;

  // Row-major storage of A is column-major storage of A^T, so factor A^T and
  // solve with its array transpose.
  const int *ap = a.outerIndexPtr();
  const int *ai = a.innerIndexPtr();
  const double *ax = reinterpret_cast<const double *>(a.valuePtr());

  Factors f;
  int status = umfpack_zi_symbolic(n, n, ap, ai, ax, nullptr, &f.symbolic, control, info);
  if (status != UMFPACK_OK)
  {
    fail("symbolic analysis", status);
  }
  status = umfpack_zi_numeric(ap, ai, ax, nullptr, f.symbolic, &f.numeric, control, info);
  const double umin = info[UMFPACK_UMIN], umax = info[UMFPACK_UMAX];
  const double lnz = info[UMFPACK_LNZ], unz = info[UMFPACK_UNZ];
  if (status == UMFPACK_WARNING_singular_matrix || umin < opts.pivot_tol * amax)
  {
    throw SolverError("near-singular factorization: smallest pivot " + std::to_string(umin) +
                      " vs max|A| " + std::to_string(amax) +
                      "; the discrete problem may be at a resonance");
  }
  if (status != UMFPACK_OK)
  {
    fail("numeric factorization", status);
  }

  Eigen::VectorXcd x(n);
  status = umfpack_zi_solve(UMFPACK_Aat, ap, ai, ax, nullptr, reinterpret_cast<double *>(x.data()),
                            nullptr, reinterpret_cast<const double *>(system.rhs.data()),
                            nullptr, f.numeric, control, info);
  if (status != UMFPACK_OK)
  {
    fail("solve", status);
  }

  SolveReport rep;
  const Eigen::VectorXcd res = a * x - system.rhs;
  const double bnorm = system.rhs.norm();
  rep.residual_norm = bnorm > 0.0 ? res.norm() / bnorm : res.norm();
  rep.fill_in = static_cast<long>(lnz + unz);
  rep.pivot_growth = umax / amax;
  rep.min_pivot_ratio = umin / amax;
  rep.flagged = !(rep.residual_norm <= opts.residual_tol);
  return {std::move(x), rep};
}

}  // namespace gratingpml
