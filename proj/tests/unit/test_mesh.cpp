// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "generators.hpp"
#include "gratingpml/errors.hpp"
#include "gratingpml/mesh.hpp"

using namespace gratingpml;
using gratingpml::testing::Gen;

namespace
{
std::vector<int> all_triangles(const Mesh &m)
{
  std::vector<int> v(m.num_triangles());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

double global_min_angle(const Mesh &m)
{
  double a = INFINITY;
  for (int t = 0; t < m.num_triangles(); ++t)
  {
    a = std::min(a, min_angle(m, t));
  }
  return a;
}

int count_tag(const Mesh &m, BoundaryTag tag)
{
  return static_cast<int>(
    std::count_if(m.edges.begin(), m.edges.end(), [&](const MeshEdge &e) { return e.tag == tag; }));
}

bool has_node(const Mesh &m, Point p)
{
  return std::any_of(m.nodes.begin(), m.nodes.end(),
                     [&](const Point &q) { return q.x == p.x && q.y == p.y; });
}
}  // namespace

TEST_CASE("golden initial mesh: flat, period 1, b 1, delta 1, h0 0.5")
{
  const Mesh m = generate_initial(flat_profile(1.0), 1.0, 1.0, 1.0, 0.5);
  // 3 columns of nodes times 5 levels (y = 0, 0.5, 1, 1.5, 2)
  CHECK(m.num_nodes() == 15);
  CHECK(m.num_triangles() == 16);
  CHECK(std::count(m.regions.begin(), m.regions.end(), Region::Physical) == 8);
  CHECK(count_tag(m, BoundaryTag::SurfaceS) == 2);
  CHECK(count_tag(m, BoundaryTag::GammaInterface) == 2);
  CHECK(count_tag(m, BoundaryTag::GammaPml) == 2);
  CHECK(count_tag(m, BoundaryTag::Left) == 4);
  CHECK(count_tag(m, BoundaryTag::Right) == 4);
  CHECK(m.periodic_pairs.size() == 5);
  for (double y : {0.0, 0.5, 1.0, 1.5, 2.0})
  {
    for (double x : {0.0, 0.5, 1.0})
    {
      CHECK(has_node(m, {x, y}));
    }
  }
  CHECK(m.top == 2.0);
  check_invariants(m);
}

TEST_CASE("h0 larger than the domain still gives a valid mesh")
{
  const Mesh m = generate_initial(flat_profile(1.0), 1.0, 1.0, 1.0, 10.0);
  CHECK(m.num_triangles() >= 4);  // two per cell, two cells
  check_invariants(m);
}

TEST_CASE("sharp profile vertices are mesh nodes")
{
  const GratingProfile p = sharp_profile(1.0);
  const Mesh m = generate_initial(p, 1.0, 1.0, 2.0, 0.125);
  for (const Point &v : p.vertices)
  {
    CHECK(has_node(m, v));
  }
  CHECK(has_node(m, sharp_corner(1.0)));
  check_invariants(m);
  const MeshStats s = mesh_stats(m);
  CHECK(s.area == doctest::Approx(1.0 - 0.25 + 2.0).epsilon(1e-12));
}

TEST_CASE("profile validation and parsing")
{
  CHECK_THROWS_AS(make_profile({{0, 0}, {0.5, 1.2}, {1, 0}}, 1.0, 1.0), GeometryError);
  CHECK_THROWS_AS(make_profile({{0, 0}, {0.6, 0.1}, {0.5, 0.2}, {1, 0}}, 1.0, 1.0),
                  GeometryError);
  CHECK_THROWS_AS(make_profile({{0, 0}, {1, 0.1}}, 1.0, 1.0), GeometryError);
  std::istringstream in("# comment\n0 0.1\n0.25 0.3  # peak\n\n1 0.1\n");
  const GratingProfile p = read_profile(in, 1.0, 1.0);
  CHECK(p.vertices.size() == 3);
  CHECK(p.a == doctest::Approx(0.1));
  CHECK(p.height_at(0.125) == doctest::Approx(0.2));
}

TEST_CASE("bisect with nothing marked is the identity")
{
  const Mesh m = generate_initial(sharp_profile(1.0), 1.0, 1.0, 1.0, 0.25);
  const Mesh r = bisect(m, {});
  CHECK(r.nodes.size() == m.nodes.size());
  CHECK(r.triangles == m.triangles);
}

TEST_CASE("bisect one interior triangle")
{
  const Mesh m = generate_initial(flat_profile(1.0), 1.0, 1.0, 1.0, 0.25);
  int t = 0;
  for (; t < m.num_triangles(); ++t)
  {
    const Point c = m.centroid(t);
    if (c.x > 0.3 && c.x < 0.7 && c.y > 0.3 && c.y < 0.7)
    {
      break;
    }
  }
  const Mesh r = bisect(m, {t});
  CHECK(r.num_nodes() > m.num_nodes());
  check_invariants(r);
}

TEST_CASE("uniform refinement keeps angles bounded and halves h after two steps")
{
  Mesh m = generate_initial(sharp_profile(1.0), 1.0, 1.0, 0.5, 0.25);
  const double angle0 = global_min_angle(m);
  for (int k = 0; k < 10; ++k)
  {
    const int before = m.num_triangles();
    m = bisect(m, all_triangles(m));
    CHECK(m.num_triangles() == 2 * before);
    CHECK(global_min_angle(m) >= 0.25 * angle0);
  }
  check_invariants(m);

  Mesh f = generate_initial(flat_profile(1.0), 1.0, 1.0, 1.0, 0.25);
  const double h0 = mesh_stats(f).h_max;
  for (int k = 0; k < 2; ++k)
  {
    f = bisect(f, all_triangles(f));
  }
  CHECK(mesh_stats(f).h_max <= 0.5 * h0 * (1 + 1e-12));
}

TEST_CASE("property: random marking sequences preserve the mesh invariants")
{
  Gen gen(31);
  for (int s = 0; s < 12; ++s)
  {
    const bool sharp = s % 2 == 0;
    Mesh m = generate_initial(sharp ? sharp_profile(1.0) : flat_profile(1.0), 1.0, 1.0,
                              gen.uniform(0.5, 2.0), gen.uniform(0.2, 0.5));
    const double area0 = mesh_stats(m).area;
    for (int step = 0; step < 6; ++step)
    {
      std::vector<int> marked;
      for (int t = 0; t < m.num_triangles(); ++t)
      {
        if (gen.uniform(0, 1) < 0.15)
        {
          marked.push_back(t);
        }
      }
      const int before = m.num_nodes();
      m = bisect(m, marked);
      CHECK(m.num_nodes() >= before);
      check_invariants(m);
      CHECK(std::abs(mesh_stats(m).area - area0) <= 1e-10 * area0);
      for (const auto &[l, r] : m.periodic_pairs)
      {
        CHECK(m.nodes[l].x == 0.0);
        CHECK(m.nodes[r].x == 1.0);
        CHECK(std::abs(m.nodes[l].y - m.nodes[r].y) <= 1e-12);
      }
    }
  }
}

TEST_CASE("corner fraction limits")
{
  const Mesh m = generate_initial(sharp_profile(1.0), 1.0, 1.0, 1.0, 0.25);
  CHECK(locate_corner_fraction(m, {0.5, 0.5}, 100.0) == 1.0);
  CHECK(locate_corner_fraction(m, {0.5, 0.5}, 1e-9) == 0.0);
}

TEST_CASE("boundary tag names")
{
  CHECK(std::string(to_string(BoundaryTag::GammaPml)) == "GammaPML");
  CHECK(std::string(to_string(BoundaryTag::SurfaceS)) == "SurfaceS");
}
