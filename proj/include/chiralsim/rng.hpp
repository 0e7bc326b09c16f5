// Copyright 2026 The chiralsim Authors
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

#include <array>
#include <cstdint>

namespace chiralsim {

/// Counter-based random stream: Philox4x32-10 keyed by the seed, with the
/// 128-bit counter split into (draw counter, stream id). Streams with the
/// same seed but different ids are independent, so shot loops can hand each
/// shot its own substream and stay schedule-independent — results depend only
/// on (seed, stream id, draw index), never on execution order.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 random bits.
    double uniform();

    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal();

    /// Independent child stream, deterministic in (parent id, child index).
    /// The child starts at draw 0; the parent's state is unaffected.
    RandomStream substream(std::uint64_t child) const;

    /// One Philox4x32-10 block for the given raw counter/key words
    /// (exposed for the known-answer tests).
    static std::array<std::uint32_t, 4> philox4x32_10(const std::array<std::uint32_t, 4>& counter,
                                                      const std::array<std::uint32_t, 2>& key);

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int avail_ = 0;
};

}  // namespace chiralsim
