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

#include "qdemon/batch.hpp"

namespace qdemon {

unsigned resolve_workers(unsigned requested) noexcept {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::vector<ProtocolOutcome> run_batch(const SimParams& p, unsigned workers) {
  p.validate();
  std::vector<ProtocolOutcome> out(p.n_traj);
  parallel_for_index(out.size(), workers, [&](std::size_t i) { out[i] = run_protocol(p, i); });
  return out;
}

}  // namespace qdemon
