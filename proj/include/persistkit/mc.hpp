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

// Monte Carlo bookkeeping and the chunked executor.
//
// Every level of parallelism in this library goes through run_chunks(): a run
// of n samples is cut into fixed-size chunks, chunk c draws its RNG stream
// from chunk_seed(master_seed, c), chunk partials are computed independently
// (serially or under OpenMP) and merged in chunk order. The merged result is
// therefore a pure function of (master_seed, chunk_size) — bit-identical
// across worker counts and across the serial/parallel kernels, which is what
// the determinism tests and the serial-vs-OpenMP benchmark rely on.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace persistkit::mc {

struct McEstimate {
  double value = 0.0;
  double stderr_value = 0.0;  // sample standard deviation / sqrt(n)
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::uint32_t chunks = 0;
};

// Streaming first/second moments; merge is associative and, done in chunk
// order, deterministic.
struct MomentAccumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t n = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  void merge(const MomentAccumulator& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    n += o.n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double stderr_of_mean() const {
    if (n < 2) return 0.0;
    double m = mean();
    double var = (sum_sq - static_cast<double>(n) * m * m) /
                 static_cast<double>(n - 1);
    if (var < 0.0) var = 0.0;
    return std::sqrt(var / static_cast<double>(n));
  }
  McEstimate estimate(std::uint64_t seed, std::uint32_t chunks) const {
    return {mean(), stderr_of_mean(), n, seed, chunks};
  }
};

struct RunPolicy {
  // <= 1 runs the serial reference kernel; > 1 runs the OpenMP kernel.
  int threads = 1;
  // Part of the determinism contract: changing it changes the stream layout.
  std::uint32_t chunk_size = 8192;
  // First chunk index of this run; lets a run be split into sub-runs that
  // reuse exactly the chunk seeds of the combined run.
  std::uint64_t chunk_offset = 0;
};

// Worker count resolved from the PERSISTKIT_THREADS environment variable,
// falling back to the OpenMP default (1 in non-OpenMP builds).
int threads_from_env();

inline RunPolicy default_policy() { return RunPolicy{threads_from_env(), 8192}; }

inline std::uint32_t chunk_count(std::uint64_t n_samples, std::uint32_t chunk_size) {
  if (n_samples == 0) return 0;
  return static_cast<std::uint32_t>((n_samples + chunk_size - 1) / chunk_size);
}

inline std::uint64_t chunk_begin(std::uint32_t c, std::uint32_t chunk_size) {
  return static_cast<std::uint64_t>(c) * chunk_size;
}

// Runs fn(c) for c in [0, n_chunks) and returns the partials indexed by chunk.
// The OpenMP and serial paths produce identical vectors.
template <class Partial, class Fn>
std::vector<Partial> run_chunks(std::uint32_t n_chunks, const RunPolicy& policy,
                                Fn&& fn) {
  std::vector<Partial> partials(n_chunks);
#if defined(_OPENMP)
  if (policy.threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(policy.threads)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
      partials[static_cast<std::size_t>(c)] =
          fn(static_cast<std::uint32_t>(c));
    }
    return partials;
  }
#endif
  for (std::uint32_t c = 0; c < n_chunks; ++c) {
    partials[c] = fn(c);
  }
  return partials;
}

// Pairwise (balanced-tree) reduction by chunk index. Besides the usual
// summation-accuracy benefit, the tree makes sub-run merging exact: for a
// power-of-two chunk count the root splits at K/2, so two half-runs reduced
// the same way combine bit-identically into the full-run result.
template <class T>
T pairwise_merge(const std::vector<T>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  T left = pairwise_merge(parts, lo, mid);
  T right = pairwise_merge(parts, mid, hi);
  left.merge(right);
  return left;
}

template <class T>
T pairwise_merge(const std::vector<T>& parts) {
  if (parts.empty()) return T{};
  return pairwise_merge(parts, 0, parts.size());
}

}  // namespace persistkit::mc
