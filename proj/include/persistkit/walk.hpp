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

// Integrated random walk Z_k = (S_k^{(2)}, S_k):
//   S_k = y0 + X_1 + ... + X_k,   S_k^{(2)} = x0 + S_1 + ... + S_k,
// killed at the first k >= 1 with S_k^{(2)} <= 0. The start is never killed
// at k = 0, so a path from (0,0) survives step one exactly when X_1 > 0.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "persistkit/dist.hpp"
#include "persistkit/harmonic.hpp"
#include "persistkit/mc.hpp"
#include "persistkit/rng.hpp"

namespace persistkit::walk {

using harmonic::PlanePoint;

struct ExitSample {
  std::uint64_t exit_time = 0;  // min(tau, horizon + 1); horizon + 1 = censored
  PlanePoint final_state;
  double corrector_sum = 0.0;   // sum of visitor values over visited states
  bool survived = false;
};

// One trajectory up to `horizon` steps. The visitor is invoked at every
// surviving state Z_l, l = 0..exit-1, and its return values accumulate into
// corrector_sum (pass a void-to-zero lambda when unused).
template <class Visitor>
ExitSample simulate_exit(const dist::IncrementDistribution& d, PlanePoint z0,
                         std::uint64_t horizon, rng::Philox& gen,
                         Visitor&& visit) {
  double x = z0.x;
  double y = z0.y;
  double acc = 0.0;
  for (std::uint64_t k = 1; k <= horizon; ++k) {
    acc += visit(PlanePoint{x, y});
    y += dist::sample_increment(d, gen);
    x += y;
    if (x <= 0.0) return {k, {x, y}, acc, false};
  }
  return {horizon + 1, {x, y}, acc, true};
}

ExitSample simulate_exit(const dist::IncrementDistribution& d, PlanePoint z0,
                         std::uint64_t horizon, rng::Philox& gen);

struct SurvivalRow {
  std::uint64_t n = 0;
  mc::McEstimate estimate;
};

struct SurvivalCurve {
  PlanePoint start;
  std::string dist_name;
  std::vector<SurvivalRow> rows;
};

// P_z(tau > n) for every n in `ns` (strictly increasing), one trajectory per
// path serving all horizons.
SurvivalCurve estimate_survival(const dist::IncrementDistribution& d,
                                PlanePoint z, const std::vector<std::uint64_t>& ns,
                                std::uint64_t n_paths, std::uint64_t master_seed,
                                const mc::RunPolicy& policy = mc::default_policy());

// Empirical concentration functionals at time n for the unkilled walk from the
// origin: first = sup-cell estimate of P(|S_n^{(2)}-x|<=1, |S_n-y|<=1), second
// = sup-cell estimate of P(|S_n^{(2)}-x|<=1).
std::pair<double, double> concentration_check(
    const dist::IncrementDistribution& d, std::uint64_t n, std::uint64_t n_paths,
    std::uint64_t master_seed, const mc::RunPolicy& policy = mc::default_policy());

}  // namespace persistkit::walk
