// Copyright 2026 The QSTS Authors
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

#ifndef QSTS_RNG_H
#define QSTS_RNG_H

#include <cstdint>

namespace qsts {

/// Counter-based generator: draw k is splitmix64 applied to seed + (k+1)*gamma.
/// The whole stream is a function of (seed, draw index), which makes it easy
/// to reproduce in any language and to record per-measurement draws.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    /// Index of the next draw.
    std::uint64_t draw_index() const { return counter_; }

    std::uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via Box-Muller (consumes two draws).
    double normal();

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Independent seed for trial `index` of a campaign keyed by `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace qsts

#endif
