// Copyright 2026 The sase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SASE_RNG_HPP
#define SASE_RNG_HPP

#include <cstdint>

namespace sase {

/// SplitMix64 generator. Pure 64-bit integer arithmetic, so streams are
/// bit-identical on every platform; std:: distributions are deliberately
/// avoided because their algorithms are implementation-defined.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1): top 53 bits of the next draw.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi). Exact when lo == hi.
    double next_in(double lo, double hi) {
        return lo + next_double() * (hi - lo);
    }

private:
    std::uint64_t state_;
};

/// Derives an independent stream seed from a base seed and a stream index.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    SplitMix64 mixer(base ^ (stream * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL));
    return mixer.next_u64();
}

}  // namespace sase

#endif  // SASE_RNG_HPP
