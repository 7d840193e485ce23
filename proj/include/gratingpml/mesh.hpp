// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_MESH_HPP
#define GRATINGPML_MESH_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gratingpml/types.hpp"

namespace gratingpml
{

enum class BoundaryTag : std::uint8_t
{
  Interior,
  SurfaceS,
  GammaInterface,
  GammaPml,
  Left,
  Right
};

enum class Region : std::uint8_t
{
  Physical,
  Pml
};

const char *to_string(BoundaryTag tag);

// Piecewise-linear grating surface over one period.
struct GratingProfile
{
  std::vector<Point> vertices;
  double a = 0.0;  // lowest point of the surface

  double height_at(double x) const;
};

// Validates ordering, periodic closure and that the surface stays below y = b.
GratingProfile make_profile(std::vector<Point> vertices, double period, double gamma_height);
GratingProfile flat_profile(double period, double y = 0.0);

// Reentrant corner used by the sharp-angle example: (0,0), (Λ/2, Λ/2), (Λ,0).
GratingProfile sharp_profile(double period);
Point sharp_corner(double period);

// "x y" per line, '#' starts a comment.
GratingProfile read_profile(std::istream &in, double period, double gamma_height);
GratingProfile read_profile_file(const std::string &path, double period,
                                 double gamma_height);

struct MeshEdge
{
  int a, b;  // a < b
  BoundaryTag tag;
  std::array<int, 2> tri;  // second entry is -1 on the boundary
};

// Conforming triangulation of the strip above the grating, including the PML.
// Triangles are stored counter-clockwise as (v0, v1, v2) with v0 the newest
// vertex, so (v1, v2) is the refinement edge.
struct Mesh
{
  std::vector<Point> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Region> regions;

  std::vector<MeshEdge> edges;
  std::vector<std::array<int, 3>> tri_edges;  // edge opposite local vertex k

  std::vector<int> node_partner;  // Left <-> Right, -1 elsewhere
  std::vector<int> edge_partner;  // Left <-> Right, -1 elsewhere
  std::vector<std::pair<int, int>> periodic_pairs;  // (left node, right node)

  GratingProfile profile;
  double period = 1.0;
  double gamma_height = 1.0;
  double top = 2.0;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  std::array<Point, 3> vertices(int t) const
  {
    const auto &v = triangles[t];
    return {nodes[v[0]], nodes[v[1]], nodes[v[2]]};
  }
  double area(int t) const;
  double diameter(int t) const;  // longest edge
  Point centroid(int t) const;
  double edge_length(int e) const;
};

// Builds edges, boundary tags, regions and periodic pairing from nodes and
// triangles. If node_partner is empty, Left/Right nodes are paired by exactly
// matching y coordinates.
Mesh finalize_mesh(std::vector<Point> nodes, std::vector<std::array<int, 3>> triangles,
                   std::vector<int> node_partner, const GratingProfile &profile,
                   double period, double gamma_height, double top);

Mesh generate_initial(const GratingProfile &profile, double period, double gamma_height,
                      double pml_thickness, double h0);

// Newest-vertex bisection of the marked triangles plus conforming closure.
// Periodic edges are refined in pairs.
Mesh bisect(const Mesh &mesh, const std::vector<int> &marked);

double locate_corner_fraction(const Mesh &mesh, Point point, double radius);

// Throws GeometryError/PairingError describing the first violated invariant.
void check_invariants(const Mesh &mesh);

struct MeshStats
{
  int nodes = 0;
  int triangles = 0;
  int physical_triangles = 0;
  int pml_triangles = 0;
  int boundary_edges[6] = {};
  double h_min = 0.0;
  double h_max = 0.0;
  double min_angle_deg = 0.0;
  double area = 0.0;
};

MeshStats mesh_stats(const Mesh &mesh);
double min_angle(const Mesh &mesh, int t);  // radians

}  // namespace gratingpml

#endif  // GRATINGPML_MESH_HPP
