// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_ADAPT_HPP
#define GRATINGPML_ADAPT_HPP

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "gratingpml/estimator.hpp"
#include "gratingpml/mesh.hpp"
#include "gratingpml/pml.hpp"
#include "gratingpml/rayleigh.hpp"
#include "gratingpml/solver.hpp"
#include "gratingpml/wave_params.hpp"

namespace gratingpml
{

// Doerfler marking on squared indicators: the shortest prefix of the
// descending order (ties to the lower index) whose squares exceed
// tau^2 times the total.
std::vector<int> mark(const std::vector<double> &eta, double tau);

struct ProblemSetup
{
  WaveContext ctx;
  GratingProfile profile;
  Complex sigma{12.0, 12.0};
  int m = 2;
  std::optional<double> delta;  // calibrated when empty
  double target_fhat = 1e-8;    // bound on F_hat
  CalibrationOptions calibration;
  bool flat_reference = false;  // compare against the closed-form flat solution
};

struct AdaptSettings
{
  double tolerance = 1e-3;
  double tau = 0.5;
  int max_iters = 20;
  long max_dofs = 200000;
  double h0 = 0.125;
  int n_max = default_n_max;
  JumpFlux flux = JumpFlux::Weighted;
  int quad_degree = 5;
  int threads = 1;
};

enum class StopReason
{
  ToleranceMet,
  MaxIterations,
  MaxDofs
};

const char *to_string(StopReason r);

struct IterationRecord
{
  int iteration = 0;
  int nodes = 0;
  int dofs = 0;
  ErrorIndicators indicators;
  EfficiencyReport efficiency;
  SolveReport solve;
  double wall_seconds = 0.0;
  std::optional<double> true_error;
  std::shared_ptr<const Mesh> mesh;
  SolutionField field;
};

struct AdaptiveRun
{
  PmlProfile pml;
  ModelingConstants constants;
  std::vector<IterationRecord> iterations;
  StopReason stop = StopReason::MaxIterations;
};

// Resolves the PML: uses the fixed delta when given, otherwise calibrates
// F_hat sqrt(Lambda) <= target_fhat sqrt(Lambda).
PmlProfile resolve_pml(const ProblemSetup &setup, const ModeTable &modes);

using IterationCallback = std::function<void(const IterationRecord &)>;

// Calibrate once, then solve / estimate / mark / refine until eps_FEM <= tolerance
// or a cap is reached.
AdaptiveRun run(const ProblemSetup &setup, const AdaptSettings &settings,
                const IterationCallback &on_iteration = {});

}  // namespace gratingpml

#endif  // GRATINGPML_ADAPT_HPP
