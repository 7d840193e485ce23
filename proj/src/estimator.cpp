// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include "gratingpml/estimator.hpp"

#include <cmath>

#include "gratingpml/parallel.hpp"
#include "gratingpml/quadrature.hpp"

namespace gratingpml
{

namespace
{

struct Gradients
{
  std::array<double, 3> gx, gy;
};

Gradients p1_gradients(const std::array<Point, 3> &v)
{
  const double det = (v[1].x - v[0].x) * (v[2].y - v[0].y) - (v[2].x - v[0].x) * (v[1].y - v[0].y);
  const double inv = 1.0 / det;
  return {{(v[1].y - v[2].y) * inv, (v[2].y - v[0].y) * inv, (v[0].y - v[1].y) * inv},
          {(v[2].x - v[1].x) * inv, (v[0].x - v[2].x) * inv, (v[1].x - v[0].x) * inv}};
}

Complex rho_on(Region r, const PmlProfile &p, double y)
{
  return r == Region::Physical ? Complex(1.0) : rho(p, y);
}

// Flux through an edge with unit normal nu.
Vec2c conormal(const Mat2c &g, Complex rh, double nx, double ny, const WaveContext &ctx,
               JumpFlux flux)
{
  const double l2m = ctx.lambda + 2.0 * ctx.mu, lpm = ctx.lambda + ctx.mu;
  if (flux == JumpFlux::Literal)
  {
    const Complex div = g(0, 0) + g(1, 1);
    return Vec2c(ctx.mu * (g(0, 0) * nx + g(0, 1) * ny) + lpm * div * nx,
                 ctx.mu * (g(1, 0) * nx + g(1, 1) * ny) + lpm * div * ny);
  }
  const Complex s11 = l2m * rh * g(0, 0) + lpm * g(1, 1);
  const Complex s12 = ctx.mu * g(0, 1) / rh;
  const Complex s21 = ctx.mu * rh * g(1, 0);
  const Complex s22 = l2m * g(1, 1) / rh + lpm * g(0, 0);
  return Vec2c(s11 * nx + s12 * ny, s21 * nx + s22 * ny);
}

// Flux in the +x direction on a periodic side.
Vec2c side_flux(const Mat2c &g, Complex rh, const WaveContext &ctx, JumpFlux flux)
{
  if (flux == JumpFlux::Literal)
  {
    const Complex div = g(0, 0) + g(1, 1) / rh;
    return Vec2c(ctx.mu * g(0, 0) + (ctx.lambda + ctx.mu) * div, ctx.mu * g(1, 0));
  }
  return conormal(g, rh, 1.0, 0.0, ctx, flux);
}

// ||f - g||_{L2(e)} for a linear f with end values fa, fb against analytic g.
template <class G>
double edge_error(Point a, Point b, const Vec2c &fa, const Vec2c &fb, G &&g)
{
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  double acc = 0.0;
  for (const auto &q : quad::gauss5())
  {
    const double x = a.x + q.t * (b.x - a.x), y = a.y + q.t * (b.y - a.y);
    const Vec2c f = (1.0 - q.t) * fa + q.t * fb;
    acc += q.weight * (f - g(x, y)).squaredNorm();
  }
  return std::sqrt(len * acc);
}

}  // namespace

Mat2c element_gradient(const Mesh &mesh, int t, const SolutionField &u)
{
  const auto gr = p1_gradients(mesh.vertices(t));
  Mat2c g = Mat2c::Zero();
  for (int i = 0; i < 3; ++i)
  {
    const Vec2c &ui = u[mesh.triangles[t][i]];
    g.col(0) += ui * gr.gx[i];
    g.col(1) += ui * gr.gy[i];
  }
  return g;
}

double element_residual(const Mesh &mesh, int t, const SolutionField &u,
                        const WaveContext &ctx, const PmlProfile &p, int quad_degree)
{
  const auto v = mesh.vertices(t);
  const auto &tri = mesh.triangles[t];
  const double area = mesh.area(t);
  const double w2 = ctx.omega * ctx.omega;
  const bool in_pml = mesh.regions[t] == Region::Pml;
  const Mat2c g = in_pml ? element_gradient(mesh, t, u) : Mat2c::Zero();
  double acc = 0.0;
  for (const auto &q : quad::triangle_rule(quad_degree))
  {
    const Vec2c uq = q.bary[0] * u[tri[0]] + q.bary[1] * u[tri[1]] + q.bary[2] * u[tri[2]];
    Vec2c r;
    if (!in_pml)
    {
      r = w2 * uq;
    }
    else
    {
      const Point x = quad::map_to(v, q.bary);
      const Complex rh = rho(p, x.y);
      const Complex s = rho_prime(p, x.y) / (rh * rh);
      const Vec2c src = pml_source(ctx, p, x.x, x.y);
      r(0) = -ctx.mu * s * g(0, 1) + w2 * rh * uq(0) - src(0);
      r(1) = -(ctx.lambda + 2.0 * ctx.mu) * s * g(1, 1) + w2 * rh * uq(1) - src(1);
    }
    acc += q.weight * r.squaredNorm();
  }
  return std::sqrt(area * acc);
}

std::vector<double> jump_residuals(const Mesh &mesh, const SolutionField &u,
                                   const WaveContext &ctx, const PmlProfile &p, JumpFlux flux)
{
  const int nt = mesh.num_triangles();
  std::vector<Mat2c> grad(nt);
  for (int t = 0; t < nt; ++t)
  {
    grad[t] = element_gradient(mesh, t, u);
  }
  const Complex back = std::conj(quasi_periodic_phase(ctx));
  std::vector<double> out(mesh.edges.size(), 0.0);
  for (std::size_t e = 0; e < mesh.edges.size(); ++e)
  {
    const auto &ed = mesh.edges[e];
    const Point a = mesh.nodes[ed.a], b = mesh.nodes[ed.b];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    double acc = 0.0;
    if (ed.tag == BoundaryTag::Interior || ed.tag == BoundaryTag::GammaInterface)
    {
      const int t1 = ed.tri[0], t2 = ed.tri[1];
      const double nx = (b.y - a.y) / len, ny = -(b.x - a.x) / len;
      for (const auto &q : quad::gauss5())
      {
        const double y = a.y + q.t * (b.y - a.y);
        const Vec2c j = conormal(grad[t1], rho_on(mesh.regions[t1], p, y), nx, ny, ctx, flux) -
                        conormal(grad[t2], rho_on(mesh.regions[t2], p, y), nx, ny, ctx, flux);
        acc += q.weight * j.squaredNorm();
      }
    }
    else if (ed.tag == BoundaryTag::Left)
    {
      const int t = ed.tri[0];
      const int tp = mesh.edges[mesh.edge_partner[e]].tri[0];
      for (const auto &q : quad::gauss5())
      {
        const double y = a.y + q.t * (b.y - a.y);
        const Vec2c j = side_flux(grad[t], rho_on(mesh.regions[t], p, y), ctx, flux) -
                        back * side_flux(grad[tp], rho_on(mesh.regions[tp], p, y), ctx, flux);
        acc += q.weight * j.squaredNorm();
      }
    }
    else
    {
      continue;
    }
    out[e] = std::sqrt(len * acc);
  }
  // The right-side jump is the left one times e^{i alpha Lambda}: same norm.
  for (std::size_t e = 0; e < mesh.edges.size(); ++e)
  {
    if (mesh.edges[e].tag == BoundaryTag::Right)
    {
      out[e] = out[mesh.edge_partner[e]];
    }
  }
  return out;
}

ErrorIndicators indicators(const Mesh &mesh, const SolutionField &u, const WaveContext &ctx,
                           const PmlProfile &p, double f_hat, const EstimatorOptions &opts)
{
  const int nt = mesh.num_triangles();
  ErrorIndicators ind;
  ind.residual_T.assign(nt, 0.0);
  parallel_for(nt, opts.threads, [&](int t) {
    ind.residual_T[t] = element_residual(mesh, t, u, ctx, p, opts.quad_degree);
  });
  ind.jump_e = jump_residuals(mesh, u, ctx, p, opts.flux);

  auto uinc = [&](double x, double y) { return incident_field(ctx, x, y); };
  std::vector<double> interp_sq(nt, 0.0);
  double top_sq = 0.0, gamma_sq = 0.0;
  for (const auto &ed : mesh.edges)
  {
    const Point a = mesh.nodes[ed.a], b = mesh.nodes[ed.b];
    if (ed.tag == BoundaryTag::GammaPml)
    {
      const double pi_err = edge_error(a, b, uinc(a.x, a.y), uinc(b.x, b.y), uinc);
      interp_sq[ed.tri[0]] += pi_err * pi_err;
      const double tr = edge_error(a, b, u[ed.a], u[ed.b], uinc);
      top_sq += tr * tr;
    }
    else if (ed.tag == BoundaryTag::GammaInterface)
    {
      const double tr = edge_error(a, b, u[ed.a], u[ed.b], uinc);
      gamma_sq += tr * tr;
    }
  }

  ind.eta_T.assign(nt, 0.0);
  ind.eta_hat_T.assign(nt, 0.0);
  double total = 0.0;
  for (int t = 0; t < nt; ++t)
  {
    double jsum = 0.0;
    for (int k = 0; k < 3; ++k)
    {
      const int e = mesh.tri_edges[t][k];
      const double j = ind.jump_e[e];
      jsum += mesh.edge_length(e) * j * j;
    }
    const double eta = mesh.diameter(t) * ind.residual_T[t] + std::sqrt(0.5 * jsum);
    ind.eta_T[t] = eta;
    ind.eta_hat_T[t] = eta + std::sqrt(interp_sq[t]);
    total += eta * eta;
  }
  ind.global_eta = std::sqrt(total);
  ind.top_trace_error = std::sqrt(top_sq);
  ind.interface_trace = std::sqrt(gamma_sq);
  ind.eps_fem = ind.top_trace_error + ind.global_eta;
  ind.eps_pml = f_hat * ind.interface_trace;
  return ind;
}

}  // namespace gratingpml
