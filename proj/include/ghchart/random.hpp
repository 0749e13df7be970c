/*
   Copyright 2026 The ghchart Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <limits>

namespace ghchart {

// SplitMix64 output function (Steele, Lea & Flood 2014; Vigna's constants).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stable child seed for substream `key` of `seed`. Used for both cell seeds
// (master -> p index -> size index) and per-iteration streams, so any cell or
// iteration can be regenerated on its own:
//
//   derive_seed(s, k) = mix64(mix64(s) ^ (k * 0x9e3779b97f4a7c15 + 0x632be59bd9b4e019))
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) {
    return mix64(mix64(seed) ^ (key * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
}

// 64-bit SplitMix generator. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform on (0, 1]: 53 random bits, never exactly zero so log() is finite.
    constexpr double uniform_open0() {
        return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
    }

    constexpr std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace ghchart
