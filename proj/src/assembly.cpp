// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include "gratingpml/assembly.hpp"

#include <ostream>
#include <string>

#include "gratingpml/errors.hpp"
#include "gratingpml/kernels.hpp"
#include "gratingpml/numfmt.hpp"
#include "gratingpml/parallel.hpp"
#include "gratingpml/quadrature.hpp"

namespace gratingpml
{

namespace
{

struct P1Geometry
{
  double area;
  std::array<double, 3> gx, gy;
};

P1Geometry p1_geometry(const std::array<Point, 3> &v)
{
  const double det = (v[1].x - v[0].x) * (v[2].y - v[0].y) - (v[2].x - v[0].x) * (v[1].y - v[0].y);
  if (!(det > 0.0))
  {
    throw GeometryError("degenerate or inverted triangle");
  }
  const double inv = 1.0 / det;
  return {0.5 * det,
          {(v[1].y - v[2].y) * inv, (v[2].y - v[0].y) * inv, (v[0].y - v[1].y) * inv},
          {(v[2].x - v[1].x) * inv, (v[0].x - v[2].x) * inv, (v[1].x - v[0].x) * inv}};
}

}  // namespace

DofMap build_dofmap(const Mesh &mesh, const WaveContext &ctx)
{
  const int nn = mesh.num_nodes();
  DofMap map;
  map.phase = quasi_periodic_phase(ctx);
  map.entries.assign(2 * nn, DofEntry{});

  std::vector<char> on_s(nn, 0), on_top(nn, 0);
  for (const auto &e : mesh.edges)
  {
    if (e.tag == BoundaryTag::SurfaceS)
    {
      on_s[e.a] = on_s[e.b] = 1;
    }
    else if (e.tag == BoundaryTag::GammaPml)
    {
      on_top[e.a] = on_top[e.b] = 1;
    }
  }

  std::vector<char> slave(nn, 0);
  for (int i = 0; i < nn; ++i)
  {
    const Point p = mesh.nodes[i];
    const bool side = p.x == 0.0 || p.x == mesh.period;
    if (side && mesh.node_partner[i] < 0)
    {
      throw PairingError("boundary node " + std::to_string(i) + " has no periodic partner");
    }
    if (on_s[i] || on_top[i])
    {
      const Vec2c val = on_s[i] ? Vec2c::Zero() : incident_field(ctx, p.x, p.y);
      for (int c = 0; c < 2; ++c)
      {
        map.entries[2 * i + c].kind = DofKind::Dirichlet;
        map.entries[2 * i + c].value = val(c);
      }
    }
    else if (p.x == mesh.period)
    {
      slave[i] = 1;
    }
  }

  int next = 0;
  for (int i = 0; i < nn; ++i)
  {
    if (map.entries[2 * i].kind == DofKind::Free && !slave[i])
    {
      map.entries[2 * i].free_index = next++;
      map.entries[2 * i + 1].free_index = next++;
    }
  }
  for (int i = 0; i < nn; ++i)
  {
    if (!slave[i])
    {
      continue;
    }
    const int master = mesh.node_partner[i];
    if (map.entries[2 * master].kind != DofKind::Free)
    {
      throw AssemblyError("right boundary node " + std::to_string(i) +
                          " pairs with a constrained left node");
    }
    for (int c = 0; c < 2; ++c)
    {
      auto &e = map.entries[2 * i + c];
      e.kind = DofKind::Slave;
      e.free_index = map.entries[2 * master + c].free_index;
      e.weight = map.phase;
    }
  }
  map.num_free = next;
  return map;
}

Mat6c element_matrix(const std::array<Point, 3> &v, Region region, const WaveContext &ctx,
                     const PmlProfile &p, int quad_degree)
{
  const P1Geometry g = p1_geometry(v);
  const double lam2mu = ctx.lambda + 2.0 * ctx.mu, lampmu = ctx.lambda + ctx.mu;
  const double w2 = ctx.omega * ctx.omega;

  Complex r = g.area, ri = g.area;
  Eigen::Matrix<Complex, 3, 3> mass;
  if (region == Region::Physical || p.sigma == 0.0)
  {
    for (int i = 0; i < 3; ++i)
    {
      for (int j = 0; j < 3; ++j)
      {
        mass(i, j) = g.area * (i == j ? 2.0 : 1.0) / 12.0;
      }
    }
  }
  else
  {
    r = ri = 0.0;
    mass.setZero();
    for (const auto &q : quad::triangle_rule(quad_degree))
    {
      const Point x = quad::map_to(v, q.bary);
      const double w = q.weight * g.area;
      const Complex rh = rho(p, x.y);
      r += w * rh;
      ri += w / rh;
      for (int i = 0; i < 3; ++i)
      {
        for (int j = 0; j < 3; ++j)
        {
          mass(i, j) += w * rh * q.bary[i] * q.bary[j];
        }
      }
    }
  }

  Mat6c k;
  for (int i = 0; i < 3; ++i)
  {
    for (int j = 0; j < 3; ++j)
    {
      const double xx = g.gx[i] * g.gx[j], yy = g.gy[i] * g.gy[j];
      k(2 * i, 2 * j) = lam2mu * r * xx + ctx.mu * ri * yy - w2 * mass(i, j);
      k(2 * i + 1, 2 * j + 1) = lam2mu * ri * yy + ctx.mu * r * xx - w2 * mass(i, j);
      k(2 * i, 2 * j + 1) = lampmu * g.area * g.gx[i] * g.gy[j];
      k(2 * i + 1, 2 * j) = lampmu * g.area * g.gy[i] * g.gx[j];
    }
  }
  return k;
}

Vec6c element_load(const std::array<Point, 3> &v, Region region, const WaveContext &ctx,
                   const PmlProfile &p, int quad_degree)
{
  Vec6c f = Vec6c::Zero();
  if (region == Region::Physical || p.sigma == 0.0)
  {
    return f;
  }
  const P1Geometry g = p1_geometry(v);
  for (const auto &q : quad::triangle_rule(quad_degree))
  {
    const Point x = quad::map_to(v, q.bary);
    const Vec2c src = pml_source(ctx, p, x.x, x.y);
    const double w = q.weight * g.area;
    for (int i = 0; i < 3; ++i)
    {
      f(2 * i) -= w * q.bary[i] * src(0);
      f(2 * i + 1) -= w * q.bary[i] * src(1);
    }
  }
  return f;
}

SparseSystem assemble(const Mesh &mesh, const WaveContext &ctx, const PmlProfile &p,
                      const DofMap &dofs, const AssemblyOptions &opts)
{
  const int nt = mesh.num_triangles();
  if (static_cast<int>(dofs.entries.size()) != 2 * mesh.num_nodes())
  {
    throw AssemblyError("dof map does not match the mesh");
  }

  // Physical triangles go through the batched real kernels.
  std::vector<int> phys_slot(nt, -1), pml_slot(nt, -1);
  std::vector<int> phys, pml;
  for (int t = 0; t < nt; ++t)
  {
    if (mesh.regions[t] == Region::Physical)
    {
      phys_slot[t] = static_cast<int>(phys.size());
      phys.push_back(t);
    }
    else
    {
      pml_slot[t] = static_cast<int>(pml.size());
      pml.push_back(t);
    }
  }

  const std::size_t np = phys.size();
  std::vector<double> coords(6 * np), geo(8 * np), kphys(36 * np);
  kernels::TriangleBatch batch;
  batch.n = np;
  kernels::GeometryOut gout;
  for (int k = 0; k < 3; ++k)
  {
    batch.x[k] = coords.data() + (2 * k) * np;
    batch.y[k] = coords.data() + (2 * k + 1) * np;
    gout.gx[k] = geo.data() + (1 + k) * np;
    gout.gy[k] = geo.data() + (4 + k) * np;
  }
  gout.area = geo.data();
  gout.diam = geo.data() + 7 * np;
  for (std::size_t s = 0; s < np; ++s)
  {
    const auto &tri = mesh.triangles[phys[s]];
    for (int k = 0; k < 3; ++k)
    {
      coords[(2 * k) * np + s] = mesh.nodes[tri[k]].x;
      coords[(2 * k + 1) * np + s] = mesh.nodes[tri[k]].y;
    }
  }
  kernels::triangle_geometry(batch, gout);
  for (std::size_t s = 0; s < np; ++s)
  {
    if (!(gout.area[s] > 0.0))
    {
      throw GeometryError("triangle " + std::to_string(phys[s]) + " is degenerate");
    }
  }
  kernels::ElementIn ein;
  ein.n = np;
  ein.area = gout.area;
  for (int k = 0; k < 3; ++k)
  {
    ein.gx[k] = gout.gx[k];
    ein.gy[k] = gout.gy[k];
  }
  kernels::physical_element_matrices(
    ein, {ctx.lambda + 2.0 * ctx.mu, ctx.mu, ctx.lambda + ctx.mu, ctx.omega * ctx.omega},
    kphys.data());

  std::vector<Mat6c> kpml(pml.size());
  std::vector<Vec6c> fpml(pml.size());
  parallel_for(static_cast<int>(pml.size()), opts.threads, [&](int s) {
    const int t = pml[s];
    kpml[s] = element_matrix(mesh.vertices(t), Region::Pml, ctx, p, opts.quad_degree);
    fpml[s] = element_load(mesh.vertices(t), Region::Pml, ctx, p, opts.quad_degree);
  });

  // Serial merge in triangle order keeps the result bit-reproducible.
  SparseSystem sys;
  sys.rhs = Eigen::VectorXcd::Zero(dofs.num_free);
  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(36 * static_cast<std::size_t>(nt));
  Mat6c ke;
  Vec6c fe;
  for (int t = 0; t < nt; ++t)
  {
    if (phys_slot[t] >= 0)
    {
      const std::size_t s = phys_slot[t];
      for (int r = 0; r < 6; ++r)
      {
        for (int c = 0; c < 6; ++c)
        {
          ke(r, c) = kphys[(6 * r + c) * np + s];
        }
      }
      fe.setZero();
    }
    else
    {
      ke = kpml[pml_slot[t]];
      fe = fpml[pml_slot[t]];
    }
    const auto &tri = mesh.triangles[t];
    std::array<const DofEntry *, 6> ent;
    for (int r = 0; r < 6; ++r)
    {
      ent[r] = &dofs.at(tri[r / 2], r % 2);
    }
    for (int r = 0; r < 6; ++r)
    {
      const DofEntry &er = *ent[r];
      if (er.kind == DofKind::Dirichlet)
      {
        continue;
      }
      const Complex wr = std::conj(er.weight);
      sys.rhs(er.free_index) += wr * fe(r);
      for (int c = 0; c < 6; ++c)
      {
        const DofEntry &ec = *ent[c];
        if (ec.kind == DofKind::Dirichlet)
        {
          sys.rhs(er.free_index) -= wr * ke(r, c) * ec.value;
        }
        else
        {
          trip.emplace_back(er.free_index, ec.free_index, wr * ke(r, c) * ec.weight);
        }
      }
    }
  }
  sys.matrix.resize(dofs.num_free, dofs.num_free);
  sys.matrix.setFromTriplets(trip.begin(), trip.end());
  sys.matrix.makeCompressed();
  for (int r = 0; r < sys.matrix.rows(); ++r)
  {
    if (sys.matrix.outerIndexPtr()[r + 1] == sys.matrix.outerIndexPtr()[r])
    {
      throw AssemblyError("free dof " + std::to_string(r) + " is not coupled to any element");
    }
  }
  return sys;
}

SolutionField expand_solution(const DofMap &dofs, const Eigen::VectorXcd &x)
{
  SolutionField u(dofs.entries.size() / 2);
  for (std::size_t k = 0; k < dofs.entries.size(); ++k)
  {
    const DofEntry &e = dofs.entries[k];
    Complex val = e.value;
    if (e.kind != DofKind::Dirichlet)
    {
      val = e.weight * x(e.free_index);
    }
    u[k / 2](k % 2) = val;
  }
  return u;
}

Eigen::VectorXcd restrict_field(const DofMap &dofs, const SolutionField &u)
{
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dofs.num_free);
  for (std::size_t k = 0; k < dofs.entries.size(); ++k)
  {
    const DofEntry &e = dofs.entries[k];
    if (e.kind == DofKind::Free)
    {
      x(e.free_index) = u[k / 2](k % 2);
    }
  }
  return x;
}

SolutionField interpolate(const Mesh &mesh, const std::function<Vec2c(double, double)> &f)
{
  SolutionField u(mesh.num_nodes());
  for (int i = 0; i < mesh.num_nodes(); ++i)
  {
    u[i] = f(mesh.nodes[i].x, mesh.nodes[i].y);
  }
  return u;
}

void write_matrix_market(std::ostream &out,
                         const Eigen::SparseMatrix<Complex, Eigen::RowMajor> &a)
{
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n';
  for (int r = 0; r < a.outerSize(); ++r)
  {
    for (Eigen::SparseMatrix<Complex, Eigen::RowMajor>::InnerIterator it(a, r); it; ++it)
    {
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << format_double(it.value().real()) << ' '
          << format_double(it.value().imag()) << '\n';
    }
  }
}

}  // namespace gratingpml
