// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include "gratingpml/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "gratingpml/errors.hpp"
#include "gratingpml/numfmt.hpp"

namespace gratingpml
{

void write_vtk(std::ostream &out, const Mesh &mesh, const SolutionField *field,
               const std::vector<double> *eta)
{
  const int nn = mesh.num_nodes(), nt = mesh.num_triangles();
  out << "# vtk DataFile Version 3.0\n";
  out << "gratingpml mesh\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nn << " double\n";
  for (const auto &p : mesh.nodes)
  {
    out << format_double(p.x) << ' ' << format_double(p.y) << " 0\n";
  }
  out << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (const auto &t : mesh.triangles)
  {
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  out << "CELL_TYPES " << nt << '\n';
  for (int t = 0; t < nt; ++t)
  {
    out << "5\n";
  }
  out << "CELL_DATA " << nt << '\n';
  out << "SCALARS region int 1\nLOOKUP_TABLE default\n";
  for (const auto r : mesh.regions)
  {
    out << (r == Region::Physical ? 0 : 1) << '\n';
  }
  if (eta != nullptr)
  {
    out << "SCALARS eta_hat double 1\nLOOKUP_TABLE default\n";
    for (double v : *eta)
    {
      out << format_double(v) << '\n';
    }
  }
  if (field != nullptr)
  {
    out << "POINT_DATA " << nn << '\n';
    out << "VECTORS u_re double\n";
    for (const auto &u : *field)
    {
      out << format_double(u(0).real()) << ' ' << format_double(u(1).real()) << " 0\n";
    }
    out << "VECTORS u_im double\n";
    for (const auto &u : *field)
    {
      out << format_double(u(0).imag()) << ' ' << format_double(u(1).imag()) << " 0\n";
    }
  }
}

namespace
{

class Tokens
{
public:
  explicit Tokens(std::istream &in) : in_(in) {}

  bool next(std::string &tok) { return static_cast<bool>(in_ >> tok); }

  std::string expect()
  {
    std::string tok;
    if (!next(tok))
    {
      throw GeometryError("unexpected end of VTK file");
    }
    return tok;
  }

  double number()
  {
    const std::string tok = expect();
    double v = 0.0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
    {
      throw GeometryError("VTK: expected a number, got '" + tok + "'");
    }
    return v;
  }

  long integer()
  {
    const std::string tok = expect();
    long v = 0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
    {
      throw GeometryError("VTK: expected an integer, got '" + tok + "'");
    }
    return v;
  }

  void skip_line() { std::getline(in_, scratch_); }

private:
  std::istream &in_;
  std::string scratch_;
};

}  // namespace

VtkData read_vtk(std::istream &in)
{
  std::string header;
  std::getline(in, header);
  if (header.rfind("# vtk DataFile", 0) != 0)
  {
    throw GeometryError("not a legacy VTK file");
  }
  std::getline(in, header);  // title
  Tokens tk(in);
  VtkData d;
  std::vector<double> re, im;
  std::string tok;
  long npoints = 0, data_count = 0;
  while (tk.next(tok))
  {
    if (tok == "ASCII" || tok == "DATASET")
    {
      if (tok == "DATASET" && tk.expect() != "UNSTRUCTURED_GRID")
      {
        throw GeometryError("VTK: only UNSTRUCTURED_GRID is supported");
      }
    }
    else if (tok == "POINTS")
    {
      npoints = tk.integer();
      tk.expect();
      d.nodes.resize(npoints);
      for (auto &p : d.nodes)
      {
        p.x = tk.number();
        p.y = tk.number();
        tk.number();
      }
    }
    else if (tok == "CELLS")
    {
      const long n = tk.integer();
      tk.integer();
      d.triangles.resize(n);
      for (auto &t : d.triangles)
      {
        if (tk.integer() != 3)
        {
          throw GeometryError("VTK: only triangles are supported");
        }
        for (int k = 0; k < 3; ++k)
        {
          t[k] = static_cast<int>(tk.integer());
        }
      }
    }
    else if (tok == "CELL_TYPES")
    {
      const long n = tk.integer();
      for (long i = 0; i < n; ++i)
      {
        tk.integer();
      }
    }
    else if (tok == "CELL_DATA" || tok == "POINT_DATA")
    {
      data_count = tk.integer();
    }
    else if (tok == "SCALARS")
    {
      tk.expect();
      tk.expect();
      tk.expect();  // component count
      tk.expect();  // LOOKUP_TABLE
      tk.expect();
      for (long i = 0; i < data_count; ++i)
      {
        tk.number();
      }
    }
    else if (tok == "VECTORS")
    {
      const std::string name = tk.expect();
      tk.expect();
      auto &dst = name == "u_im" ? im : re;
      dst.resize(2 * npoints);
      for (long i = 0; i < npoints; ++i)
      {
        dst[2 * i] = tk.number();
        dst[2 * i + 1] = tk.number();
        tk.number();
      }
    }
    else
    {
      throw GeometryError("VTK: unexpected token '" + tok + "'");
    }
  }
  if (!re.empty())
  {
    if (im.size() != re.size())
    {
      throw GeometryError("VTK: displacement needs both u_re and u_im");
    }
    d.field.resize(npoints);
    for (long i = 0; i < npoints; ++i)
    {
      d.field[i] = Vec2c(Complex(re[2 * i], im[2 * i]), Complex(re[2 * i + 1], im[2 * i + 1]));
    }
  }
  return d;
}

Mesh mesh_from_vtk(const VtkData &data, const GratingProfile &profile, double period,
                   double gamma_height)
{
  if (data.nodes.empty())
  {
    throw GeometryError("VTK file has no points");
  }
  double top = data.nodes.front().y;
  for (const auto &p : data.nodes)
  {
    top = std::max(top, p.y);
  }
  Mesh m = finalize_mesh(data.nodes, data.triangles, {}, profile, period, gamma_height, top);
  check_invariants(m);
  return m;
}

void write_convergence_csv(std::ostream &out, const AdaptiveRun &run)
{
  out << "iteration,nodes,dofs,global_eta,eps_fem,eps_pml,true_error\n";
  for (const auto &r : run.iterations)
  {
    out << r.iteration << ',' << r.nodes << ',' << r.dofs << ','
        << format_double(r.indicators.global_eta) << ',' << format_double(r.indicators.eps_fem)
        << ',' << format_double(r.indicators.eps_pml) << ','
        << (r.true_error ? format_double(*r.true_error) : std::string()) << '\n';
  }
}

void write_efficiency_csv(std::ostream &out, const EfficiencyReport &rep)
{
  out << "n,e1,e2,prop1,prop2\n";
  for (const auto &o : rep.orders)
  {
    out << o.n << ',' << format_double(o.e1) << ',' << format_double(o.e2) << ','
        << (o.prop1 ? 1 : 0) << ',' << (o.prop2 ? 1 : 0) << '\n';
  }
  out << "total," << format_double(rep.total) << ',' << format_double(rep.deviation) << ",,\n";
}

void write_run_summary(std::ostream &out, const AdaptiveRun &run)
{
  out << "pml.delta = " << format_double(run.pml.delta) << '\n';
  out << "pml.sigma = " << format_double(run.pml.sigma.real()) << " + "
      << format_double(run.pml.sigma.imag()) << "i\n";
  out << "pml.m = " << run.pml.m << '\n';
  out << "pml.zeta = " << format_double(run.pml.zeta.real()) << " + "
      << format_double(run.pml.zeta.imag()) << "i\n";
  out << "F = " << format_double(run.constants.F) << '\n';
  out << "F_hat = " << format_double(run.constants.F_hat) << '\n';
  out << "iterations = " << run.iterations.size() << '\n';
  out << "stop = " << to_string(run.stop) << '\n';
  if (!run.iterations.empty())
  {
    const auto &last = run.iterations.back();
    out << "final.nodes = " << last.nodes << '\n';
    out << "final.dofs = " << last.dofs << '\n';
    out << "final.eps_fem = " << format_double(last.indicators.eps_fem) << '\n';
    out << "final.eps_pml = " << format_double(last.indicators.eps_pml) << '\n';
    out << "final.efficiency_total = " << format_double(last.efficiency.total) << '\n';
    out << "final.solver_residual = " << format_double(last.solve.residual_norm) << '\n';
    if (last.true_error)
    {
      out << "final.true_error = " << format_double(*last.true_error) << '\n';
    }
  }
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y, int count)
{
  const int n = static_cast<int>(std::min(x.size(), y.size()));
  const int k = std::min(n, count);
  if (k < 2)
  {
    return std::nan("");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = n - k; i < n; ++i)
  {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace gratingpml
