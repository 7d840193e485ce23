// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_ASSEMBLY_HPP
#define GRATINGPML_ASSEMBLY_HPP

#include <array>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "gratingpml/mesh.hpp"
#include "gratingpml/pml.hpp"
#include "gratingpml/wave_params.hpp"

namespace gratingpml
{

using Mat6c = Eigen::Matrix<Complex, 6, 6>;
using Vec6c = Eigen::Matrix<Complex, 6, 1>;

// Nodal displacement values; entry i is the vector at mesh node i.
using SolutionField = std::vector<Vec2c>;

enum class DofKind : std::uint8_t
{
  Free,
  Dirichlet,
  Slave
};

struct DofEntry
{
  DofKind kind = DofKind::Free;
  int free_index = -1;       // own index (Free) or master's index (Slave)
  Complex value{0.0, 0.0};   // prescribed value (Dirichlet)
  Complex weight{1.0, 0.0};  // u_slave = weight * u_master
};

// Per-node, per-component classification; entry 2 * node + component.
struct DofMap
{
  std::vector<DofEntry> entries;
  int num_free = 0;
  Complex phase{1.0, 0.0};

  const DofEntry &at(int node, int component) const { return entries[2 * node + component]; }
};

// S nodes are clamped to zero, Gamma^PML nodes take u_inc, Right nodes follow
// their Left partner times e^{i alpha Lambda}. Dirichlet wins over slaving.
DofMap build_dofmap(const Mesh &mesh, const WaveContext &ctx);

struct SparseSystem
{
  Eigen::SparseMatrix<Complex, Eigen::RowMajor> matrix;
  Eigen::VectorXcd rhs;
};

struct AssemblyOptions
{
  int quad_degree = 5;
  int threads = 1;
};

// Local dof 2*i + c is component c at vertex i; row = test, column = trial.
// Cross terms use the symmetric form (lambda + mu)(d_y u2 d_x v1 + d_x u1 d_y v2).
Mat6c element_matrix(const std::array<Point, 3> &v, Region region, const WaveContext &ctx,
                     const PmlProfile &p, int quad_degree = 5);

// Entries -int g . phi_i over a PML triangle; zero in the physical region.
Vec6c element_load(const std::array<Point, 3> &v, Region region, const WaveContext &ctx,
                   const PmlProfile &p, int quad_degree = 5);

SparseSystem assemble(const Mesh &mesh, const WaveContext &ctx, const PmlProfile &p,
                      const DofMap &dofs, const AssemblyOptions &opts = {});

// Nodal field from free-dof values, applying Dirichlet data and periodic slaving.
SolutionField expand_solution(const DofMap &dofs, const Eigen::VectorXcd &x);

// Free-dof vector of a nodal field (masters only).
Eigen::VectorXcd restrict_field(const DofMap &dofs, const SolutionField &u);

SolutionField interpolate(const Mesh &mesh, const std::function<Vec2c(double, double)> &f);

// Matrix Market "coordinate complex general".
void write_matrix_market(std::ostream &out, const Eigen::SparseMatrix<Complex, Eigen::RowMajor> &a);

}  // namespace gratingpml

#endif  // GRATINGPML_ASSEMBLY_HPP
