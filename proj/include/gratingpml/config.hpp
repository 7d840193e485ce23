// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_CONFIG_HPP
#define GRATINGPML_CONFIG_HPP

#include <optional>
#include <string>

#include "gratingpml/adapt.hpp"

namespace gratingpml
{

//
// Run configuration. Text format: '[section]' headers followed by 'key = value'
// lines; '#' starts a comment. Unknown sections and keys are rejected.
//
//   [wave]    omega, lambda, mu, theta_deg (required); period, gamma_height
//   [grating] builtin = flat | sharp, or profile = <path to "x y" file>
//   [pml]     sigma_re, sigma_im, m, delta, target_fhat, delta_cap
//   [adapt]   tolerance, tau, max_iters, max_dofs, h0, n_max,
//             jump_flux = weighted | literal
//   [output]  dir, write_vtk, write_system
//
struct RunConfig
{
  struct Wave
  {
    double omega = 0.0;
    double lambda = 0.0;
    double mu = 0.0;
    double theta_deg = 0.0;
    double period = 1.0;
    double gamma_height = 1.0;
    bool operator==(const Wave &) const = default;
  } wave;

  struct Grating
  {
    std::string builtin = "flat";  // empty when a profile file is given
    std::string profile;
    bool operator==(const Grating &) const = default;
  } grating;

  struct Pml
  {
    double sigma_re = 12.0;
    double sigma_im = 12.0;
    int m = 2;
    std::optional<double> delta;
    std::optional<double> target_fhat;  // default 1e-8 / sqrt(period)
    double delta_cap = 64.0;
    bool operator==(const Pml &) const = default;
  } pml;

  struct Adapt
  {
    double tolerance = 1e-3;
    double tau = 0.5;
    int max_iters = 20;
    long max_dofs = 200000;
    double h0 = 0.125;
    int n_max = default_n_max;
    std::string jump_flux = "weighted";
    bool operator==(const Adapt &) const = default;
  } adapt;

  struct Output
  {
    std::string dir = "out";
    bool write_vtk = true;
    bool write_system = false;
    bool operator==(const Output &) const = default;
  } output;

  bool operator==(const RunConfig &) const = default;

  double target_fhat() const;
};

// Throw ConfigError naming the line (syntax) or key (range).
RunConfig parse_config(const std::string &text);
RunConfig load_config(const std::string &path);
std::string write_config(const RunConfig &cfg);

// Relative profile paths resolve against base_dir.
ProblemSetup to_setup(const RunConfig &cfg, const std::string &base_dir = ".");
AdaptSettings to_settings(const RunConfig &cfg);

}  // namespace gratingpml

#endif  // GRATINGPML_CONFIG_HPP
