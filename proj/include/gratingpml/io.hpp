// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_IO_HPP
#define GRATINGPML_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "gratingpml/adapt.hpp"
#include "gratingpml/mesh.hpp"

namespace gratingpml
{

// Legacy ASCII unstructured grid. Cell data: region (0 physical, 1 PML) and,
// if given, the indicator; point data: real and imaginary displacement.
void write_vtk(std::ostream &out, const Mesh &mesh, const SolutionField *field = nullptr,
               const std::vector<double> *eta = nullptr);

struct VtkData
{
  std::vector<Point> nodes;
  std::vector<std::array<int, 3>> triangles;
  SolutionField field;  // empty if the file has no displacement
};

VtkData read_vtk(std::istream &in);

// Rebuilds a mesh from file data; the PML top is the largest node height.
Mesh mesh_from_vtk(const VtkData &data, const GratingProfile &profile, double period,
                   double gamma_height);

// iteration,nodes,dofs,global_eta,eps_fem,eps_pml,true_error
void write_convergence_csv(std::ostream &out, const AdaptiveRun &run);

// n,e1,e2,prop1,prop2 with a closing "total" row carrying the sum and |sum - 1|.
void write_efficiency_csv(std::ostream &out, const EfficiencyReport &rep);

void write_run_summary(std::ostream &out, const AdaptiveRun &run);

// Least-squares slope of log(y) against log(x) over the last `count` points.
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y, int count);

}  // namespace gratingpml

#endif  // GRATINGPML_IO_HPP
