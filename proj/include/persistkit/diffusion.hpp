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

// The Kolmogorov diffusion (integral of Brownian motion, Brownian motion):
// exact transition density, exact Gaussian stepping, and the one-sided exit
// Monte Carlo with its kappa h / t^{1/4} survival asymptotics.

#pragma once

#include <cstdint>

#include "persistkit/harmonic.hpp"
#include "persistkit/mc.hpp"
#include "persistkit/rng.hpp"

namespace persistkit::diffusion {

using harmonic::PlanePoint;

// g_t(from; to) of the pair (x + y t + int_0^t B, y + B_t).
double transition_density(double t, PlanePoint from, PlanePoint to);

// One exact Gaussian step of size dt: (x + y dt + A, y + B) with
// Cov[A,B] = [[dt^3/3, dt^2/2], [dt^2/2, dt]].
PlanePoint exact_step(PlanePoint state, double dt, rng::Philox& gen);

// kappa = 3 Gamma(1/4) / (2^{3/4} pi^{3/2}) ~ 1.1615.
double kappa();

// kappa h(z) / t^{1/4}; requires z alive (x > 0, or x = 0 with y > 0).
double bm_survival_asymptotic(PlanePoint z, double t);

// Default monitoring grid: 64 steps per unit time.
std::uint64_t default_bm_steps(double t);

struct BmSurvivalEstimate {
  mc::McEstimate estimate;
  std::uint64_t n_steps = 0;  // recorded so discretization bias is attributable
  double dt = 0.0;
};

// P_z(tau_bm > t) by exact stepping on a uniform grid with discrete exit
// monitoring (which biases survival upward; measured, not modeled).
BmSurvivalEstimate mc_bm_survival(PlanePoint z, double t, std::uint64_t n_steps,
                                  std::uint64_t n_paths, std::uint64_t master_seed,
                                  const mc::RunPolicy& policy = mc::default_policy());

}  // namespace persistkit::diffusion
