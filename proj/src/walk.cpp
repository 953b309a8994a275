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

#include "persistkit/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace persistkit::walk {

ExitSample simulate_exit(const dist::IncrementDistribution& d, PlanePoint z0,
                         std::uint64_t horizon, rng::Philox& gen) {
  return simulate_exit(d, z0, horizon, gen, [](PlanePoint) { return 0.0; });
}

SurvivalCurve estimate_survival(const dist::IncrementDistribution& d,
                                PlanePoint z, const std::vector<std::uint64_t>& ns,
                                std::uint64_t n_paths, std::uint64_t master_seed,
                                const mc::RunPolicy& policy) {
  if (ns.empty() || !std::is_sorted(ns.begin(), ns.end()) ||
      std::adjacent_find(ns.begin(), ns.end()) != ns.end()) {
    throw std::invalid_argument("estimate_survival: ns must be strictly increasing");
  }
  if (n_paths == 0) throw std::invalid_argument("estimate_survival: n_paths > 0");

  const std::uint64_t horizon = ns.back();
  const std::uint32_t n_chunks = mc::chunk_count(n_paths, policy.chunk_size);

  struct Partial {
    std::vector<mc::MomentAccumulator> rows;
  };
  auto partials = mc::run_chunks<Partial>(n_chunks, policy, [&](std::uint32_t c) {
    Partial p;
    p.rows.resize(ns.size());
    rng::Philox gen(rng::chunk_seed(master_seed, policy.chunk_offset + c));
    std::uint64_t begin = mc::chunk_begin(c, policy.chunk_size);
    std::uint64_t end = std::min<std::uint64_t>(begin + policy.chunk_size, n_paths);
    for (std::uint64_t p_idx = begin; p_idx < end; ++p_idx) {
      ExitSample s = simulate_exit(d, z, horizon, gen);
      for (std::size_t r = 0; r < ns.size(); ++r) {
        p.rows[r].add(s.exit_time > ns[r] ? 1.0 : 0.0);
      }
    }
    return p;
  });

  SurvivalCurve curve;
  curve.start = z;
  curve.dist_name = dist::kind_name(d);
  curve.rows.resize(ns.size());
  for (std::size_t r = 0; r < ns.size(); ++r) {
    std::vector<mc::MomentAccumulator> row;
    row.reserve(partials.size());
    for (const auto& p : partials) row.push_back(p.rows[r]);
    curve.rows[r].n = ns[r];
    curve.rows[r].estimate = mc::pairwise_merge(row).estimate(master_seed, n_chunks);
  }
  return curve;
}

namespace {

// sup over x of the fraction of samples in [x-1, x+1]: sort and slide a
// length-2 window.
double sliding_window_max(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  std::size_t best = 0, lo = 0;
  for (std::size_t hi = 0; hi < v.size(); ++hi) {
    while (v[hi] - v[lo] > 2.0) ++lo;
    best = std::max(best, hi - lo + 1);
  }
  return static_cast<double>(best) / static_cast<double>(v.size());
}

}  // namespace

std::pair<double, double> concentration_check(const dist::IncrementDistribution& d,
                                              std::uint64_t n, std::uint64_t n_paths,
                                              std::uint64_t master_seed,
                                              const mc::RunPolicy& policy) {
  if (n < 1) throw std::invalid_argument("concentration_check: n >= 1 required");
  if (n_paths == 0) throw std::invalid_argument("concentration_check: n_paths > 0");

  const std::uint32_t n_chunks = mc::chunk_count(n_paths, policy.chunk_size);
  struct Partial {
    std::vector<double> s2;
    std::vector<double> s;
  };
  auto partials = mc::run_chunks<Partial>(n_chunks, policy, [&](std::uint32_t c) {
    Partial p;
    rng::Philox gen(rng::chunk_seed(master_seed, policy.chunk_offset + c));
    std::uint64_t begin = mc::chunk_begin(c, policy.chunk_size);
    std::uint64_t end = std::min<std::uint64_t>(begin + policy.chunk_size, n_paths);
    p.s2.reserve(end - begin);
    p.s.reserve(end - begin);
    for (std::uint64_t i = begin; i < end; ++i) {
      double y = 0.0, x = 0.0;
      for (std::uint64_t k = 0; k < n; ++k) {
        y += dist::sample_increment(d, gen);
        x += y;
      }
      p.s2.push_back(x);
      p.s.push_back(y);
    }
    return p;
  });

  std::vector<double> s2, s;
  s2.reserve(n_paths);
  s.reserve(n_paths);
  for (auto& p : partials) {
    s2.insert(s2.end(), p.s2.begin(), p.s2.end());
    s.insert(s.end(), p.s.begin(), p.s.end());
  }

  // Joint functional: cells of side 2 in both coordinates, four half-cell
  // phase shifts so that every unit-centered box is covered by some cell.
  double q2 = 0.0;
  for (int phase = 0; phase < 4; ++phase) {
    double ox = (phase & 1) ? 1.0 : 0.0;
    double oy = (phase & 2) ? 1.0 : 0.0;
    std::unordered_map<std::uint64_t, std::uint32_t> cells;
    cells.reserve(s2.size());
    for (std::size_t i = 0; i < s2.size(); ++i) {
      auto cx = static_cast<std::int64_t>(std::floor((s2[i] - ox) / 2.0));
      auto cy = static_cast<std::int64_t>(std::floor((s[i] - oy) / 2.0));
      std::uint64_t key = (static_cast<std::uint64_t>(cx) << 32) ^
                          static_cast<std::uint32_t>(cy);
      std::uint32_t cnt = ++cells[key];
      q2 = std::max(q2, static_cast<double>(cnt));
    }
  }
  q2 /= static_cast<double>(n_paths);

  // q2 <= q1 holds by construction: a cell's points share its s2-interval of
  // length 2, so no cell count can beat the best sliding window.
  double q1 = sliding_window_max(s2);
  return {q2, q1};
}

}  // namespace persistkit::walk
