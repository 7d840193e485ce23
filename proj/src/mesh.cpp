// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include "gratingpml/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "gratingpml/errors.hpp"

namespace gratingpml
{

namespace
{

std::uint64_t edge_key(int a, int b)
{
  if (a > b)
  {
    std::swap(a, b);
  }
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

double cross(Point o, Point p, Point q)
{
  return (p.x - o.x) * (q.y - o.y) - (q.x - o.x) * (p.y - o.y);
}

double dist(Point p, Point q)
{
  return std::hypot(p.x - q.x, p.y - q.y);
}

}  // namespace

const char *to_string(BoundaryTag tag)
{
  switch (tag)
  {
    case BoundaryTag::Interior:
      return "Interior";
    case BoundaryTag::SurfaceS:
      return "SurfaceS";
    case BoundaryTag::GammaInterface:
      return "GammaInterface";
    case BoundaryTag::GammaPml:
      return "GammaPML";
    case BoundaryTag::Left:
      return "Left";
    case BoundaryTag::Right:
      return "Right";
  }
  return "?";
}

double GratingProfile::height_at(double x) const
{
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), x,
                                   [](const Point &p, double v) { return p.x < v; });
  if (it == vertices.begin())
  {
    return vertices.front().y;
  }
  if (it == vertices.end())
  {
    return vertices.back().y;
  }
  const Point &q = *it;
  const Point &p = *(it - 1);
  if (q.x == x)
  {
    return q.y;
  }
  const double s = (x - p.x) / (q.x - p.x);
  return p.y + s * (q.y - p.y);
}

GratingProfile make_profile(std::vector<Point> vertices, double period, double gamma_height)
{
  if (vertices.size() < 2)
  {
    throw GeometryError("grating profile needs at least two vertices");
  }
  const double tol = 1e-12 * period;
  if (std::abs(vertices.front().x) > tol || std::abs(vertices.back().x - period) > tol)
  {
    throw GeometryError("grating profile must start at x = 0 and end at x = period");
  }
  vertices.front().x = 0.0;
  vertices.back().x = period;
  for (std::size_t i = 1; i < vertices.size(); ++i)
  {
    if (!(vertices[i].x > vertices[i - 1].x))
    {
      throw GeometryError("grating profile x coordinates must be strictly increasing (vertex " +
                          std::to_string(i) + ")");
    }
  }
  if (std::abs(vertices.front().y - vertices.back().y) > tol)
  {
    throw GeometryError("grating profile is not periodic: y(0) != y(period)");
  }
  vertices.back().y = vertices.front().y;
  GratingProfile p;
  p.a = std::numeric_limits<double>::infinity();
  double top = -std::numeric_limits<double>::infinity();
  for (const auto &v : vertices)
  {
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
    {
      throw GeometryError("grating profile has non-finite coordinates");
    }
    p.a = std::min(p.a, v.y);
    top = std::max(top, v.y);
  }
  if (!(top < gamma_height))
  {
    throw GeometryError("grating profile reaches y = " + std::to_string(top) +
                        ", which is not below the interface height " +
                        std::to_string(gamma_height));
  }
  p.vertices = std::move(vertices);
  return p;
}

GratingProfile flat_profile(double period, double y)
{
  GratingProfile p;
  p.vertices = {{0.0, y}, {period, y}};
  p.a = y;
  return p;
}

GratingProfile sharp_profile(double period)
{
  GratingProfile p;
  p.vertices = {{0.0, 0.0}, sharp_corner(period), {period, 0.0}};
  p.a = 0.0;
  return p;
}

Point sharp_corner(double period)
{
  return {0.5 * period, 0.5 * period};
}

GratingProfile read_profile(std::istream &in, double period, double gamma_height)
{
  std::vector<Point> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line))
  {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
    {
      line.erase(hash);
    }
    std::istringstream ss(line);
    ss.imbue(std::locale::classic());
    Point p;
    if (!(ss >> p.x))
    {
      continue;
    }
    std::string rest;
    if (!(ss >> p.y) || (ss >> rest))
    {
      throw GeometryError("profile line " + std::to_string(lineno) +
                          ": expected exactly two numbers \"x y\"");
    }
    pts.push_back(p);
  }
  return make_profile(std::move(pts), period, gamma_height);
}

GratingProfile read_profile_file(const std::string &path, double period, double gamma_height)
{
  std::ifstream in(path);
  if (!in)
  {
    throw GeometryError("cannot open profile file '" + path + "'");
  }
  return read_profile(in, period, gamma_height);
}

double Mesh::area(int t) const
{
  const auto v = vertices(t);
  return 0.5 * cross(v[0], v[1], v[2]);
}

double Mesh::diameter(int t) const
{
  const auto v = vertices(t);
  return std::max({dist(v[0], v[1]), dist(v[1], v[2]), dist(v[2], v[0])});
}

Point Mesh::centroid(int t) const
{
  const auto v = vertices(t);
  return {(v[0].x + v[1].x + v[2].x) / 3.0, (v[0].y + v[1].y + v[2].y) / 3.0};
}

double Mesh::edge_length(int e) const
{
  return dist(nodes[edges[e].a], nodes[edges[e].b]);
}

Mesh finalize_mesh(std::vector<Point> nodes, std::vector<std::array<int, 3>> triangles,
                   std::vector<int> node_partner, const GratingProfile &profile,
                   double period, double gamma_height, double top)
{
  Mesh m;
  m.nodes = std::move(nodes);
  m.triangles = std::move(triangles);
  m.profile = profile;
  m.period = period;
  m.gamma_height = gamma_height;
  m.top = top;

  const int nn = m.num_nodes();
  const int nt = m.num_triangles();
  m.regions.resize(nt);
  m.tri_edges.resize(nt);

  const double ytol = 1e-12 * std::max(1.0, std::abs(top));
  std::unordered_map<std::uint64_t, int> lookup;
  lookup.reserve(3 * nt / 2 + 16);
  for (int t = 0; t < nt; ++t)
  {
    const auto &v = m.triangles[t];
    for (int k = 0; k < 3; ++k)
    {
      if (v[k] < 0 || v[k] >= nn)
      {
        throw GeometryError("triangle " + std::to_string(t) + " references a missing node");
      }
    }
    bool below = true, above = true;
    for (int k = 0; k < 3; ++k)
    {
      below = below && m.nodes[v[k]].y <= gamma_height + ytol;
      above = above && m.nodes[v[k]].y >= gamma_height - ytol;
    }
    if (!below && !above)
    {
      throw GeometryError("triangle " + std::to_string(t) + " straddles the interface y = b");
    }
    m.regions[t] = below ? Region::Physical : Region::Pml;
    for (int k = 0; k < 3; ++k)
    {
      const int a = v[(k + 1) % 3], b = v[(k + 2) % 3];
      auto [it, inserted] = lookup.emplace(edge_key(a, b), static_cast<int>(m.edges.size()));
      if (inserted)
      {
        m.edges.push_back({std::min(a, b), std::max(a, b), BoundaryTag::Interior, {t, -1}});
      }
      else
      {
        auto &e = m.edges[it->second];
        if (e.tri[1] != -1)
        {
          throw GeometryError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                              ") is shared by more than two triangles");
        }
        e.tri[1] = t;
      }
      m.tri_edges[t][k] = it->second;
    }
  }

  for (auto &e : m.edges)
  {
    const Point p = m.nodes[e.a], q = m.nodes[e.b];
    if (e.tri[1] != -1)
    {
      e.tag = (p.y == gamma_height && q.y == gamma_height) ? BoundaryTag::GammaInterface
                                                           : BoundaryTag::Interior;
    }
    else if (p.x == 0.0 && q.x == 0.0)
    {
      e.tag = BoundaryTag::Left;
    }
    else if (p.x == period && q.x == period)
    {
      e.tag = BoundaryTag::Right;
    }
    else if (p.y == top && q.y == top)
    {
      e.tag = BoundaryTag::GammaPml;
    }
    else
    {
      e.tag = BoundaryTag::SurfaceS;
    }
  }

  if (node_partner.empty())
  {
    node_partner.assign(nn, -1);
    std::vector<int> left, right;
    for (int i = 0; i < nn; ++i)
    {
      if (m.nodes[i].x == 0.0)
      {
        left.push_back(i);
      }
      else if (m.nodes[i].x == period)
      {
        right.push_back(i);
      }
    }
    auto by_y = [&](int i, int j) { return m.nodes[i].y < m.nodes[j].y; };
    std::sort(left.begin(), left.end(), by_y);
    std::sort(right.begin(), right.end(), by_y);
    if (left.size() != right.size())
    {
      throw PairingError("left boundary has " + std::to_string(left.size()) +
                         " nodes but right boundary has " + std::to_string(right.size()));
    }
    for (std::size_t k = 0; k < left.size(); ++k)
    {
      if (std::abs(m.nodes[left[k]].y - m.nodes[right[k]].y) > 1e-12 * period)
      {
        throw PairingError("no right boundary node matches left node " +
                           std::to_string(left[k]));
      }
      node_partner[left[k]] = right[k];
      node_partner[right[k]] = left[k];
    }
  }
  if (static_cast<int>(node_partner.size()) != nn)
  {
    throw PairingError("periodic partner table has the wrong size");
  }
  m.node_partner = std::move(node_partner);
  for (int i = 0; i < nn; ++i)
  {
    if (m.nodes[i].x == 0.0 && m.node_partner[i] >= 0)
    {
      m.periodic_pairs.emplace_back(i, m.node_partner[i]);
    }
  }

  m.edge_partner.assign(m.edges.size(), -1);
  for (std::size_t e = 0; e < m.edges.size(); ++e)
  {
    const auto &ed = m.edges[e];
    if (ed.tag != BoundaryTag::Left && ed.tag != BoundaryTag::Right)
    {
      continue;
    }
    const int pa = m.node_partner[ed.a], pb = m.node_partner[ed.b];
    const auto it = (pa < 0 || pb < 0) ? lookup.end() : lookup.find(edge_key(pa, pb));
    if (it == lookup.end())
    {
      throw PairingError("periodic edge (" + std::to_string(ed.a) + ", " +
                         std::to_string(ed.b) + ") has no partner on the opposite side");
    }
    m.edge_partner[e] = it->second;
  }
  return m;
}

Mesh generate_initial(const GratingProfile &profile, double period, double gamma_height,
                      double pml_thickness, double h0)
{
  if (!(h0 > 0.0) || !std::isfinite(h0))
  {
    throw ParameterError("mesh size h0 must be positive");
  }
  if (!(pml_thickness > 0.0) || !std::isfinite(pml_thickness))
  {
    throw ParameterError("PML thickness must be positive");
  }
  // Re-validate: callers may hand in a hand-built profile.
  const GratingProfile prof = make_profile(profile.vertices, period, gamma_height);

  std::vector<double> xs{0.0}, ss{prof.vertices.front().y};
  for (std::size_t i = 1; i < prof.vertices.size(); ++i)
  {
    const Point p = prof.vertices[i - 1], q = prof.vertices[i];
    const int n = std::max(1, static_cast<int>(std::ceil(dist(p, q) / h0 - 1e-12)));
    for (int k = 1; k < n; ++k)
    {
      const double s = static_cast<double>(k) / n;
      xs.push_back(p.x + s * (q.x - p.x));
      ss.push_back(p.y + s * (q.y - p.y));
    }
    xs.push_back(q.x);
    ss.push_back(q.y);
  }
  ss.back() = ss.front();

  const int n_omega =
    std::max(1, static_cast<int>(std::ceil((gamma_height - prof.a) / h0 - 1e-12)));
  const int n_pml = std::max(1, static_cast<int>(std::ceil(pml_thickness / h0 - 1e-12)));
  const int levels = n_omega + n_pml;
  const double top = gamma_height + pml_thickness;
  const int ncol = static_cast<int>(xs.size());

  std::vector<Point> nodes;
  nodes.reserve(ncol * (levels + 1));
  auto id = [&](int i, int k) { return i * (levels + 1) + k; };
  for (int i = 0; i < ncol; ++i)
  {
    for (int k = 0; k <= levels; ++k)
    {
      double y;
      if (k == 0)
      {
        y = ss[i];
      }
      else if (k < n_omega)
      {
        y = ss[i] + (static_cast<double>(k) / n_omega) * (gamma_height - ss[i]);
      }
      else if (k == n_omega)
      {
        y = gamma_height;
      }
      else if (k < levels)
      {
        y = gamma_height + (static_cast<double>(k - n_omega) / n_pml) * pml_thickness;
      }
      else
      {
        y = top;
      }
      nodes.push_back({xs[i], y});
    }
  }
  // The right column mirrors the left one exactly.
  for (int k = 0; k <= levels; ++k)
  {
    nodes[id(ncol - 1, k)] = {period, nodes[id(0, k)].y};
  }

  std::vector<std::array<int, 3>> tris;
  tris.reserve(2 * (ncol - 1) * levels);
  for (int i = 0; i + 1 < ncol; ++i)
  {
    for (int k = 0; k < levels; ++k)
    {
      const int p00 = id(i, k), p10 = id(i + 1, k), p11 = id(i + 1, k + 1), p01 = id(i, k + 1);
      // Both halves share the diagonal as refinement edge.
      tris.push_back({p10, p11, p00});
      tris.push_back({p01, p00, p11});
    }
  }

  std::vector<int> partner(nodes.size(), -1);
  for (int k = 0; k <= levels; ++k)
  {
    partner[id(0, k)] = id(ncol - 1, k);
    partner[id(ncol - 1, k)] = id(0, k);
  }
  return finalize_mesh(std::move(nodes), std::move(tris), std::move(partner), prof, period,
                       gamma_height, top);
}

Mesh bisect(const Mesh &mesh, const std::vector<int> &marked)
{
  const int nt = mesh.num_triangles();
  const int ne = static_cast<int>(mesh.edges.size());
  std::vector<char> edge_marked(ne, 0);
  std::vector<int> work;
  auto mark = [&](int e) {
    if (!edge_marked[e])
    {
      edge_marked[e] = 1;
      work.push_back(e);
    }
  };
  for (int t : marked)
  {
    if (t < 0 || t >= nt)
    {
      throw GeometryError("marked triangle " + std::to_string(t) + " is out of range");
    }
    mark(mesh.tri_edges[t][0]);
  }
  while (!work.empty())
  {
    const int e = work.back();
    work.pop_back();
    for (int t : mesh.edges[e].tri)
    {
      if (t >= 0)
      {
        mark(mesh.tri_edges[t][0]);
      }
    }
    if (mesh.edge_partner[e] >= 0)
    {
      mark(mesh.edge_partner[e]);
    }
  }

  std::vector<Point> nodes = mesh.nodes;
  std::vector<int> partner = mesh.node_partner;
  std::vector<int> mid(ne, -1);
  for (int e = 0; e < ne; ++e)
  {
    if (edge_marked[e])
    {
      const Point p = mesh.nodes[mesh.edges[e].a], q = mesh.nodes[mesh.edges[e].b];
      mid[e] = static_cast<int>(nodes.size());
      nodes.push_back({0.5 * (p.x + q.x), 0.5 * (p.y + q.y)});
      partner.push_back(-1);
    }
  }
  for (int e = 0; e < ne; ++e)
  {
    if (edge_marked[e] && mesh.edge_partner[e] >= 0)
    {
      partner[mid[e]] = mid[mesh.edge_partner[e]];
    }
  }

  std::vector<std::array<int, 3>> tris;
  tris.reserve(nt + 3 * marked.size() + 16);
  for (int t = 0; t < nt; ++t)
  {
    const auto [v0, v1, v2] = mesh.triangles[t];
    const auto &te = mesh.tri_edges[t];
    if (!edge_marked[te[0]])
    {
      tris.push_back(mesh.triangles[t]);
      continue;
    }
    const int m = mid[te[0]];
    // Children (m, v0, v1) and (m, v2, v0); their refinement edges are the
    // parent's edges opposite v2 and v1.
    const std::array<std::array<int, 3>, 2> children{{{m, v0, v1}, {m, v2, v0}}};
    const std::array<int, 2> child_edge{te[2], te[1]};
    for (int c = 0; c < 2; ++c)
    {
      const auto &ch = children[c];
      if (edge_marked[child_edge[c]])
      {
        const int mm = mid[child_edge[c]];
        tris.push_back({mm, ch[0], ch[1]});
        tris.push_back({mm, ch[2], ch[0]});
      }
      else
      {
        tris.push_back(ch);
      }
    }
  }
  return finalize_mesh(std::move(nodes), std::move(tris), std::move(partner), mesh.profile,
                       mesh.period, mesh.gamma_height, mesh.top);
}

double locate_corner_fraction(const Mesh &mesh, Point point, double radius)
{
  if (mesh.triangles.empty())
  {
    return 0.0;
  }
  int inside = 0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
  {
    if (dist(mesh.centroid(t), point) <= radius)
    {
      ++inside;
    }
  }
  return static_cast<double>(inside) / mesh.num_triangles();
}

void check_invariants(const Mesh &mesh)
{
  const double scale = std::max({1.0, mesh.period, std::abs(mesh.top)});
  double total = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
  {
    const double a = mesh.area(t);
    if (!(a > 0.0))
    {
      throw GeometryError("triangle " + std::to_string(t) + " has non-positive area");
    }
    total += a;
  }

  for (std::size_t e = 0; e < mesh.edges.size(); ++e)
  {
    const auto &ed = mesh.edges[e];
    const Point p = mesh.nodes[ed.a], q = mesh.nodes[ed.b];
    if (ed.tag == BoundaryTag::SurfaceS)
    {
      for (const Point &r : {p, q})
      {
        if (std::abs(r.y - mesh.profile.height_at(r.x)) > 1e-10 * scale)
        {
          throw GeometryError("edge " + std::to_string(e) +
                              " is on the mesh boundary but not on the grating surface "
                              "(hanging node?)");
        }
      }
    }
    if (ed.tag == BoundaryTag::GammaInterface)
    {
      const int t0 = ed.tri[0], t1 = ed.tri[1];
      if (mesh.regions[t0] == mesh.regions[t1])
      {
        throw GeometryError("interface edge " + std::to_string(e) +
                            " does not separate the two regions");
      }
    }
  }

  for (int i = 0; i < mesh.num_nodes(); ++i)
  {
    const Point p = mesh.nodes[i];
    const bool side = p.x == 0.0 || p.x == mesh.period;
    const int j = mesh.node_partner[i];
    if (side != (j >= 0))
    {
      throw PairingError("node " + std::to_string(i) + " has an inconsistent periodic partner");
    }
    if (j >= 0)
    {
      if (mesh.node_partner[j] != i || mesh.nodes[j].x == p.x ||
          std::abs(mesh.nodes[j].y - p.y) > 1e-12 * mesh.period)
      {
        throw PairingError("periodic pair (" + std::to_string(i) + ", " + std::to_string(j) +
                           ") is not a mirrored bijection");
      }
    }
  }

  double surface = 0.0;
  const auto &v = mesh.profile.vertices;
  for (std::size_t i = 1; i < v.size(); ++i)
  {
    surface += 0.5 * (v[i].y + v[i - 1].y) * (v[i].x - v[i - 1].x);
  }
  const double exact = mesh.top * mesh.period - surface;
  if (std::abs(total - exact) > 1e-10 * exact)
  {
    throw GeometryError("triangle areas sum to " + std::to_string(total) + " instead of " +
                        std::to_string(exact));
  }
}

double min_angle(const Mesh &mesh, int t)
{
  const auto v = mesh.vertices(t);
  double best = pi;
  for (int k = 0; k < 3; ++k)
  {
    const Point o = v[k], p = v[(k + 1) % 3], q = v[(k + 2) % 3];
    const double ux = p.x - o.x, uy = p.y - o.y, wx = q.x - o.x, wy = q.y - o.y;
    best = std::min(best, std::atan2(std::abs(ux * wy - uy * wx), ux * wx + uy * wy));
  }
  return best;
}

MeshStats mesh_stats(const Mesh &mesh)
{
  MeshStats s;
  s.nodes = mesh.num_nodes();
  s.triangles = mesh.num_triangles();
  s.h_min = std::numeric_limits<double>::infinity();
  s.min_angle_deg = 180.0;
  for (int t = 0; t < s.triangles; ++t)
  {
    (mesh.regions[t] == Region::Physical ? s.physical_triangles : s.pml_triangles)++;
    const double h = mesh.diameter(t);
    s.h_min = std::min(s.h_min, h);
    s.h_max = std::max(s.h_max, h);
    s.min_angle_deg = std::min(s.min_angle_deg, min_angle(mesh, t) * 180.0 / pi);
    s.area += mesh.area(t);
  }
  for (const auto &e : mesh.edges)
  {
    s.boundary_edges[static_cast<int>(e.tag)]++;
  }
  return s;
}

}  // namespace gratingpml
