// Copyright 2026 The qdemon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "qdemon/params.hpp"
#include "qdemon/protocol.hpp"

namespace qdemon {

/// Resolves a requested worker count; 0 means one per hardware thread.
unsigned resolve_workers(unsigned requested) noexcept;

/// Calls fn(i) for every i in [0, n) on `workers` threads. Each index is
/// handled exactly once and results must be written by index, so the output
/// does not depend on scheduling. If any call throws, the exception of the
/// lowest failing index is rethrown after all workers stop.
template <typename Fn>
void parallel_for_index(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(resolve_workers(workers),
                                            static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  constexpr std::size_t chunk = 16;

  auto work = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= n || failed.load(std::memory_order_relaxed)) return;
      const std::size_t end = std::min(n, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Runs p.n_traj protocols; element i is trajectory i.
std::vector<ProtocolOutcome> run_batch(const SimParams& p, unsigned workers = 0);

}  // namespace qdemon
