// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include "gratingpml/adapt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "gratingpml/errors.hpp"
#include "gratingpml/exact.hpp"

namespace gratingpml
{

std::vector<int> mark(const std::vector<double> &eta, double tau)
{
  double total = 0.0;
  for (double e : eta)
  {
    total += e * e;
  }
  std::vector<int> marked;
  if (!(total > 0.0))
  {
    return marked;
  }
  std::vector<int> order(eta.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return eta[a] > eta[b]; });
  const double goal = tau * tau * total;
  double acc = 0.0;
  for (int t : order)
  {
    marked.push_back(t);
    acc += eta[t] * eta[t];
    if (acc > goal)
    {
      break;
    }
  }
  return marked;
}

const char *to_string(StopReason r)
{
  switch (r)
  {
    case StopReason::ToleranceMet:
      return "tolerance met";
    case StopReason::MaxIterations:
      return "max iterations";
    case StopReason::MaxDofs:
      return "max dofs";
  }
  return "?";
}

PmlProfile resolve_pml(const ProblemSetup &setup, const ModeTable &modes)
{
  const WaveContext &ctx = setup.ctx;
  if (setup.delta)
  {
    return make_pml_profile(setup.sigma, *setup.delta, setup.m, ctx.gamma_height);
  }
  return calibrate(ctx, modes, setup.sigma, setup.m, setup.target_fhat * std::sqrt(ctx.period),
                   setup.calibration);
}

AdaptiveRun run(const ProblemSetup &setup, const AdaptSettings &settings,
                const IterationCallback &on_iteration)
{
  if (!(settings.tau > 0.0 && settings.tau < 1.0))
  {
    throw ParameterError("tau must lie in (0, 1)");
  }
  const WaveContext &ctx = setup.ctx;
  const ModeTable modes = build_mode_table(ctx, settings.n_max);

  AdaptiveRun out;
  out.pml = resolve_pml(setup, modes);
  out.constants = modeling_constants(ctx, modes, out.pml);

  std::optional<FlatSolution> exact;
  if (setup.flat_reference)
  {
    exact = flat_solution(ctx);
  }

  auto mesh = std::make_shared<const Mesh>(generate_initial(
    setup.profile, ctx.period, ctx.gamma_height, out.pml.delta, settings.h0));

  for (int it = 0;; ++it)
  {
    const auto start = std::chrono::steady_clock::now();
    const DofMap dofs = build_dofmap(*mesh, ctx);
    if (dofs.num_free > settings.max_dofs)
    {
      out.stop = StopReason::MaxDofs;
      break;
    }

    IterationRecord rec;
    rec.iteration = it;
    rec.nodes = mesh->num_nodes();
    rec.dofs = dofs.num_free;
    rec.mesh = mesh;
    try
    {
      const SparseSystem sys =
        assemble(*mesh, ctx, out.pml, dofs, {settings.quad_degree, settings.threads});
      auto [x, report] = solve(sys);
      rec.solve = report;
      rec.field = expand_solution(dofs, x);
    }
    catch (const Error &e)
    {
      throw SolverError("iteration " + std::to_string(it) + " (" + std::to_string(dofs.num_free) +
                        " dofs): " + e.what());
    }
    rec.indicators = indicators(*mesh, rec.field, ctx, out.pml, out.constants.F_hat,
                                {settings.flux, settings.quad_degree, settings.threads});
    const FourierTrace trace = fourier_trace(*mesh, rec.field, ctx, settings.n_max);
    rec.efficiency = efficiencies(ctx, modes, recover_potentials(modes, trace));
    if (exact)
    {
      rec.true_error = h1_seminorm_error(*mesh, rec.field, *exact, settings.quad_degree);
    }
    rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const bool done = rec.indicators.eps_fem <= settings.tolerance;
    std::vector<int> marked;
    if (!done && it + 1 < settings.max_iters)
    {
      marked = mark(rec.indicators.eta_hat_T, settings.tau);
    }
    if (on_iteration)
    {
      on_iteration(rec);
    }
    out.iterations.push_back(std::move(rec));
    if (done || marked.empty())
    {
      out.stop = done ? StopReason::ToleranceMet : StopReason::MaxIterations;
      break;
    }
    mesh = std::make_shared<const Mesh>(bisect(*mesh, marked));
  }
  return out;
}

}  // namespace gratingpml
