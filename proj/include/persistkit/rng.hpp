// Copyright 2026 The persistkit authors
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

// Counter-based random number generation.
//
// Streams are Philox4x32-10 keyed by a 64-bit stream seed; chunk c of a Monte
// Carlo run draws its stream seed from chunk_seed(master_seed, c), so results
// are a pure function of (master_seed, chunk_size) no matter how chunks are
// scheduled across threads. The algorithm name below is part of the output
// file contract.

#pragma once

#include <array>
#include <cstdint>

namespace persistkit::rng {

inline constexpr const char* kAlgorithmName = "philox4x32-10";

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream seed for chunk c of a run with the given master seed (the c-th
// output of a SplitMix64 sequence started at master).
inline std::uint64_t chunk_seed(std::uint64_t master, std::uint64_t c) {
  return mix64(master + (c + 1) * 0x9E3779B97F4A7C15ULL);
}

// One round-10 Philox4x32 block; exposed for the known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

class Philox {
 public:
  explicit Philox(std::uint64_t stream_seed)
      : key_{static_cast<std::uint32_t>(stream_seed),
             static_cast<std::uint32_t>(stream_seed >> 32)} {}

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    std::uint64_t lo = next_u32();
    std::uint64_t hi = next_u32();
    return lo | (hi << 32);
  }

  // 53-bit uniform in [0,1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // 53-bit uniform in (0,1]; safe to pass to log().
  double next_double_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal deviate (128-layer ziggurat).
  double next_gaussian();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_{0, 0, 0, 0};
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

}  // namespace persistkit::rng
