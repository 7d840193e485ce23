// SPDX-FileCopyrightText: Copyright (c) 2026 The gratingpml Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GRATINGPML_PARALLEL_HPP
#define GRATINGPML_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace gratingpml
{

// Runs fn(i) for i in [0, n) on contiguous chunks. Each index is written by
// exactly one thread, so results do not depend on the thread count.
template <class Fn>
void parallel_for(int n, int threads, Fn &&fn)
{
  threads = std::clamp(threads, 1, std::max(1, n / 64));
  if (threads <= 1)
  {
    for (int i = 0; i < n; ++i)
    {
      fn(i);
    }
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t)
  {
    pool.emplace_back([&, t] {
      try
      {
        const int end = std::min(n, (t + 1) * chunk);
        for (int i = t * chunk; i < end; ++i)
        {
          fn(i);
        }
      }
      catch (...)
      {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto &th : pool)
  {
    th.join();
  }
  for (auto &e : errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace gratingpml

#endif  // GRATINGPML_PARALLEL_HPP
