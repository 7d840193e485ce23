// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "gratingpml/kernels.hpp"

namespace gratingpml::kernels
{

namespace
{

std::atomic<int> forced{-1};

bool cpu_has_avx2()
{
#if defined(GRATINGPML_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect()
{
  const char *env = std::getenv("GRATINGPML_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0)
  {
    return Isa::Scalar;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

bool isa_available(Isa isa)
{
  return isa == Isa::Scalar || cpu_has_avx2();
}

Isa active_isa()
{
  const int f = forced.load(std::memory_order_relaxed);
  if (f >= 0)
  {
    return static_cast<Isa>(f);
  }
  static const Isa detected = detect();
  return detected;
}

void force_isa(Isa isa)
{
  if (!isa_available(isa))
  {
    throw std::invalid_argument(std::string("instruction set not available: ") + isa_name(isa));
  }
  forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa()
{
  forced.store(-1, std::memory_order_relaxed);
}

const char *isa_name(Isa isa)
{
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

void triangle_geometry(const TriangleBatch &in, const GeometryOut &out)
{
#if defined(GRATINGPML_HAVE_AVX2)
  if (active_isa() == Isa::Avx2)
  {
    avx2::triangle_geometry(in, out);
    return;
  }
#endif
  scalar::triangle_geometry(in, out);
}

void physical_element_matrices(const ElementIn &in, const ElasticConstants &k, double *out)
{
#if defined(GRATINGPML_HAVE_AVX2)
  if (active_isa() == Isa::Avx2)
  {
    avx2::physical_element_matrices(in, k, out);
    return;
  }
#endif
  scalar::physical_element_matrices(in, k, out);
}

}  // namespace gratingpml::kernels
