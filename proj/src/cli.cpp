// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include "gratingpml/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "gratingpml/adapt.hpp"
#include "gratingpml/config.hpp"
#include "gratingpml/errors.hpp"
#include "gratingpml/io.hpp"
#include "gratingpml/numfmt.hpp"

namespace gratingpml
{

namespace fs = std::filesystem;

namespace
{

struct Common
{
  std::string config;
  std::string out;
  bool quiet = false;
  int threads = 1;
};

void add_common(CLI::App *cmd, Common &c, bool config_required)
{
  auto *opt = cmd->add_option("--config", c.config, "run configuration file");
  if (config_required)
  {
    opt->required();
  }
  cmd->add_option("--out", c.out, "output directory (overrides [output] dir)");
  cmd->add_flag("--quiet", c.quiet, "suppress progress output");
  cmd->add_option("--threads", c.threads, "worker threads for element loops")
    ->check(CLI::PositiveNumber);
}

std::string base_dir(const std::string &config)
{
  const fs::path p = fs::path(config).parent_path();
  return p.empty() ? "." : p.string();
}

fs::path prepare_out(const Common &c, const RunConfig &cfg)
{
  const fs::path dir = c.out.empty() ? fs::path(cfg.output.dir) : fs::path(c.out);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path &p)
{
  std::ofstream f(p);
  if (!f)
  {
    throw Error("cannot write '" + p.string() + "'");
  }
  return f;
}

std::string mesh_name(int it)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "mesh_%03d.vtk", it);
  return buf;
}

AdaptiveRun run_adaptive(const Common &c, const RunConfig &cfg, const ProblemSetup &setup,
                         const fs::path &dir, std::ostream &out)
{
  AdaptSettings settings = to_settings(cfg);
  settings.threads = c.threads;
  auto cb = [&](const IterationRecord &r) {
    if (!c.quiet)
    {
      out << "iter " << r.iteration << ": nodes " << r.nodes << ", dofs " << r.dofs
          << ", eps_fem " << format_double(r.indicators.eps_fem) << ", eps_pml "
          << format_double(r.indicators.eps_pml);
      if (r.true_error)
      {
        out << ", H1 error " << format_double(*r.true_error);
      }
      out << ", efficiency sum " << format_double(r.efficiency.total) << " ("
          << std::fixed << std::setprecision(2) << r.wall_seconds << " s)"
          << std::defaultfloat << std::setprecision(6) << '\n';
      if (r.solve.flagged)
      {
        out << "  warning: solver residual " << format_double(r.solve.residual_norm)
            << " exceeds 1e-10\n";
      }
    }
    if (cfg.output.write_vtk)
    {
      auto f = open_out(dir / mesh_name(r.iteration));
      write_vtk(f, *r.mesh, &r.field, &r.indicators.eta_hat_T);
    }
  };
  return run(setup, settings, cb);
}

void write_run_outputs(const RunConfig &cfg, const ProblemSetup &setup, const AdaptiveRun &res,
                       const fs::path &dir)
{
  {
    auto f = open_out(dir / "convergence.csv");
    write_convergence_csv(f, res);
  }
  if (!res.iterations.empty())
  {
    auto f = open_out(dir / "efficiency.csv");
    write_efficiency_csv(f, res.iterations.back().efficiency);
  }
  {
    auto f = open_out(dir / "run_summary.txt");
    write_run_summary(f, res);
  }
  if (cfg.output.write_system && !res.iterations.empty())
  {
    const Mesh &mesh = *res.iterations.back().mesh;
    const DofMap dofs = build_dofmap(mesh, setup.ctx);
    const SparseSystem sys = assemble(mesh, setup.ctx, res.pml, dofs);
    auto f = open_out(dir / "system.mtx");
    write_matrix_market(f, sys.matrix);
  }
}

int cmd_solve(const Common &c, std::ostream &out)
{
  const RunConfig cfg = load_config(c.config);
  const ProblemSetup setup = to_setup(cfg, base_dir(c.config));
  const fs::path dir = prepare_out(c, cfg);
  const AdaptiveRun res = run_adaptive(c, cfg, setup, dir, out);
  write_run_outputs(cfg, setup, res, dir);
  if (!c.quiet)
  {
    out << "stop: " << to_string(res.stop) << "; outputs in " << dir.string() << '\n';
  }
  return 0;
}

int cmd_validate_flat(const Common &c, std::ostream &out)
{
  const RunConfig cfg = load_config(c.config);
  if (cfg.grating.builtin != "flat")
  {
    throw ConfigError("builtin: validate-flat needs the flat grating (builtin = flat)");
  }
  const ProblemSetup setup = to_setup(cfg, base_dir(c.config));
  const fs::path dir = prepare_out(c, cfg);
  const AdaptiveRun res = run_adaptive(c, cfg, setup, dir, out);
  write_run_outputs(cfg, setup, res, dir);

  std::vector<double> n, err;
  for (const auto &r : res.iterations)
  {
    n.push_back(r.nodes);
    err.push_back(*r.true_error);
  }
  const double slope = loglog_slope(n, err, 4);
  const bool ok = n.size() >= 4 && slope >= -0.65 && slope <= -0.35;
  out << "slope of H1 error vs nodes over the last 4 iterations: " << format_double(slope)
      << (ok ? "  (within [-0.65, -0.35])" : "  (OUTSIDE [-0.65, -0.35])") << '\n';
  return ok ? 0 : 3;
}

int cmd_efficiency(const Common &c, const std::string &field_path, std::ostream &out)
{
  const RunConfig cfg = load_config(c.config);
  const ProblemSetup setup = to_setup(cfg, base_dir(c.config));
  std::ifstream in(field_path);
  if (!in)
  {
    throw ConfigError("field: cannot open '" + field_path + "'");
  }
  const VtkData data = read_vtk(in);
  if (data.field.empty())
  {
    throw ConfigError("field: '" + field_path + "' carries no displacement data");
  }
  const Mesh mesh =
    mesh_from_vtk(data, setup.profile, setup.ctx.period, setup.ctx.gamma_height);
  const ModeTable modes = build_mode_table(setup.ctx, cfg.adapt.n_max);
  const FourierTrace tr = fourier_trace(mesh, data.field, setup.ctx, cfg.adapt.n_max);
  const EfficiencyReport rep = efficiencies(setup.ctx, modes, recover_potentials(modes, tr));
  const fs::path dir = prepare_out(c, cfg);
  {
    auto f = open_out(dir / "efficiency.csv");
    write_efficiency_csv(f, rep);
  }
  write_efficiency_csv(out, rep);
  return 0;
}

int cmd_pml_calibrate(const Common &c, std::ostream &out)
{
  const RunConfig cfg = load_config(c.config);
  const ProblemSetup setup = to_setup(cfg, base_dir(c.config));
  const ModeTable modes = build_mode_table(setup.ctx, cfg.adapt.n_max);
  const double target = setup.target_fhat * std::sqrt(setup.ctx.period);
  std::optional<PmlProfile> chosen;
  std::string failure;
  try
  {
    chosen = calibrate(setup.ctx, modes, setup.sigma, setup.m, target, setup.calibration);
  }
  catch (const UnreachableTargetError &e)
  {
    failure = e.what();
  }
  out << "delta,re_zeta,im_zeta,F,F_hat,F_hat_sqrt_period,selected\n";
  for (double d = setup.calibration.delta_start; d <= setup.calibration.delta_cap; d *= 2.0)
  {
    const PmlProfile p = make_pml_profile(setup.sigma, d, setup.m, setup.ctx.gamma_height);
    const ModelingConstants k = modeling_constants(setup.ctx, modes, p);
    const bool sel = chosen && chosen->delta == d;
    out << format_double(d) << ',' << format_double(p.zeta.real()) << ','
        << format_double(p.zeta.imag()) << ',' << format_double(k.F) << ','
        << format_double(k.F_hat) << ','
        << format_double(k.F_hat * std::sqrt(setup.ctx.period)) << ',' << (sel ? "*" : "")
        << '\n';
    if (sel)
    {
      break;
    }
  }
  if (!chosen)
  {
    throw UnreachableTargetError(failure);
  }
  if (!c.quiet)
  {
    out << "selected delta = " << format_double(chosen->delta)
        << " (target F_hat sqrt(period) <= " << format_double(target) << ")\n";
  }
  return 0;
}

int cmd_mesh_info(const Common &c, const std::string &mesh_path, std::ostream &out)
{
  const RunConfig cfg = load_config(c.config);
  const ProblemSetup setup = to_setup(cfg, base_dir(c.config));
  Mesh mesh;
  if (!mesh_path.empty())
  {
    std::ifstream in(mesh_path);
    if (!in)
    {
      throw ConfigError("mesh: cannot open '" + mesh_path + "'");
    }
    mesh = mesh_from_vtk(read_vtk(in), setup.profile, setup.ctx.period, setup.ctx.gamma_height);
  }
  else
  {
    const ModeTable modes = build_mode_table(setup.ctx, cfg.adapt.n_max);
    const PmlProfile p = resolve_pml(setup, modes);
    mesh = generate_initial(setup.profile, setup.ctx.period, setup.ctx.gamma_height, p.delta,
                            cfg.adapt.h0);
  }
  check_invariants(mesh);
  const MeshStats s = mesh_stats(mesh);
  const DofMap dofs = build_dofmap(mesh, setup.ctx);
  out << "nodes = " << s.nodes << '\n';
  out << "triangles = " << s.triangles << " (physical " << s.physical_triangles << ", pml "
      << s.pml_triangles << ")\n";
  out << "free dofs = " << dofs.num_free << '\n';
  for (int k = 1; k < 6; ++k)
  {
    out << "edges[" << to_string(static_cast<BoundaryTag>(k)) << "] = " << s.boundary_edges[k]
        << '\n';
  }
  out << "h_min = " << format_double(s.h_min) << "\nh_max = " << format_double(s.h_max) << '\n';
  out << "min angle (deg) = " << format_double(s.min_angle_deg) << '\n';
  out << "area = " << format_double(s.area) << '\n';
  out << "top = " << format_double(mesh.top) << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Adaptive PML finite elements for elastic scattering by periodic gratings",
               "gratingpml"};
  app.require_subcommand(1);
  Common common;
  std::string field_path, mesh_path;

  auto *solve_cmd = app.add_subcommand("solve", "adaptive solve; writes CSV and VTK outputs");
  add_common(solve_cmd, common, true);
  auto *flat_cmd =
    app.add_subcommand("validate-flat", "flat-grating convergence study with slope report");
  add_common(flat_cmd, common, true);
  auto *eff_cmd = app.add_subcommand("efficiency", "grating efficiencies of a saved field");
  add_common(eff_cmd, common, true);
  eff_cmd->add_option("--field", field_path, "VTK file written by 'solve'")->required();
  auto *cal_cmd = app.add_subcommand("pml-calibrate", "table of delta, zeta, F and F_hat");
  add_common(cal_cmd, common, true);
  auto *info_cmd = app.add_subcommand("mesh-info", "mesh statistics");
  add_common(info_cmd, common, true);
  info_cmd->add_option("--mesh", mesh_path, "VTK mesh (default: the initial mesh)");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e, out, err);
  }
  catch (const CLI::CallForAllHelp &e)
  {
    return app.exit(e, out, err);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e, out, err);
    return 2;
  }

  try
  {
    if (*solve_cmd)
    {
      return cmd_solve(common, out);
    }
    if (*flat_cmd)
    {
      return cmd_validate_flat(common, out);
    }
    if (*eff_cmd)
    {
      return cmd_efficiency(common, field_path, out);
    }
    if (*cal_cmd)
    {
      return cmd_pml_calibrate(common, out);
    }
    return cmd_mesh_info(common, mesh_path, out);
  }
  catch (const ConfigError &e)
  {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  }
  catch (const Error &e)
  {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  catch (const std::exception &e)
  {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace gratingpml
