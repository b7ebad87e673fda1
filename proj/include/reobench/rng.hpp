/*
 * Copyright 2026 The REOBench Toolkit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace reobench {

enum class CorruptionKind;
struct Severity;

/// Counter-based deterministic stream (Philox4x32-10). A stream is a pure
/// function of its 64-bit key: two streams built from the same key produce
/// the same draws no matter when or on which thread they run, which is what
/// makes the whole pipeline order- and scheduling-independent.
class RngStream {
public:
    RngStream() : RngStream(0) {}
    explicit RngStream(std::uint64_t key);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 random mantissa bits.
    double uniform();

    /// Uniform integer in [lo, hi], both ends inclusive. Unbiased.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Standard normal draw (Box-Muller, pair-cached).
    double normal();

private:
    void refill();

    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> counter_{};
    std::array<std::uint32_t, 4> block_{};
    int block_pos_ = 4;  // forces refill on first draw
    bool have_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

/// Derive the per-(image, corruption) stream key. Streams with distinct
/// (seed, image id, kind, severity) tuples are independent for all practical
/// purposes; identical tuples always reproduce the same sequence.
RngStream derive_stream(std::uint64_t global_seed, std::string_view image_id,
                        CorruptionKind kind, Severity severity);

/// FNV-1a over bytes followed by an avalanche finalizer; used for stream
/// keys and plan hashes.
std::uint64_t hash64(std::string_view bytes, std::uint64_t seed = 0);

}  // namespace reobench
