// Copyright 2026 The qshell Authors
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
#include <string_view>

namespace qshell {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
///
/// The 64-bit seed is the Philox key. The 128-bit counter is split into a
/// 64-bit stream id (high half) and a 64-bit block index (low half), so
/// independent streams are obtained by choosing distinct stream ids instead
/// of by advancing a shared state. Output is identical on every platform.
///
/// The generator is a plain value: copying it forks the stream, and the
/// caller threads it explicitly through every sampling call.
class CounterRng {
  public:
    static constexpr std::string_view kAlgorithm = "philox4x32-10";

    using Block = std::array<uint32_t, 4>;
    using Key = std::array<uint32_t, 2>;

    explicit CounterRng(uint64_t seed, uint64_t stream = 0);

    /// Raw Philox4x32 bijection with 10 rounds.
    static Block philox(Block counter, Key key);

    uint32_t next_u32();
    uint64_t next_u64();
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal deviate (Box-Muller, no cached second value).
    double normal();

    uint64_t seed() const noexcept {
        return seed_;
    }
    uint64_t stream() const noexcept {
        return stream_;
    }
    /// Number of 32-bit words consumed so far.
    uint64_t position() const noexcept {
        return block_index_ * 4 - static_cast<uint64_t>(remaining_);
    }

    bool operator==(const CounterRng &other) const = default;

  private:
    void refill();

    uint64_t seed_;
    uint64_t stream_;
    uint64_t block_index_ = 0;
    Block buffer_{};
    int remaining_ = 0;
};

/// Stream derived from (master seed, index); used for per-trial streams so
/// trial outcomes do not depend on execution order.
inline CounterRng derived_stream(uint64_t master_seed, uint64_t index) {
    return CounterRng(master_seed, index);
}

}  // namespace qshell
