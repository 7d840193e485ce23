// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_KERNELS_HPP
#define GRATINGPML_KERNELS_HPP

#include <cstddef>

namespace gratingpml::kernels
{

// Batched P1 triangle kernels. Every routine exists as a scalar reference and,
// on x86-64, as an AVX2/FMA variant chosen at runtime. Setting the environment
// variable GRATINGPML_SIMD=scalar pins the scalar path.
enum class Isa
{
  Scalar,
  Avx2
};

Isa active_isa();
bool isa_available(Isa isa);
void force_isa(Isa isa);  // throws std::invalid_argument if unavailable
void reset_isa();
const char *isa_name(Isa isa);

// Structure-of-arrays vertex coordinates.
struct TriangleBatch
{
  std::size_t n = 0;
  const double *x[3] = {};
  const double *y[3] = {};
};

// area may come out non-positive for inverted input; callers check it.
struct GeometryOut
{
  double *area = nullptr;
  double *gx[3] = {};
  double *gy[3] = {};
  double *diam = nullptr;  // longest edge
};

struct ElasticConstants
{
  double lam2mu;  // λ + 2μ
  double mu;
  double lampmu;  // λ + μ
  double omega2;
};

// Real 6x6 element matrices (stiffness minus ω² mass) for ρ ≡ 1.
// Local dof 2*i + c is component c at vertex i; row = test, column = trial.
// Entry (r, c) of element e is written to out[(6 * r + c) * n + e].
struct ElementIn
{
  std::size_t n = 0;
  const double *area = nullptr;
  const double *gx[3] = {};
  const double *gy[3] = {};
};

void triangle_geometry(const TriangleBatch &in, const GeometryOut &out);
void physical_element_matrices(const ElementIn &in, const ElasticConstants &k, double *out);

namespace scalar
{
void triangle_geometry(const TriangleBatch &in, const GeometryOut &out);
void physical_element_matrices(const ElementIn &in, const ElasticConstants &k, double *out);
}  // namespace scalar

#if defined(GRATINGPML_HAVE_AVX2)
namespace avx2
{
void triangle_geometry(const TriangleBatch &in, const GeometryOut &out);
void physical_element_matrices(const ElementIn &in, const ElasticConstants &k, double *out);
}  // namespace avx2
#endif

}  // namespace gratingpml::kernels

#endif  // GRATINGPML_KERNELS_HPP
