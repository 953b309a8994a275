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

#include "persistkit/diffusion.hpp"

#include <cmath>
#include <stdexcept>

#include "persistkit/specfun.hpp"

namespace persistkit::diffusion {

double transition_density(double t, PlanePoint from, PlanePoint to) {
  if (!(t > 0.0)) throw std::domain_error("transition_density: t > 0 required");
  double a = to.x - from.x - t * from.y;
  double b = to.y - from.y;
  double expo = -6.0 * a * a / (t * t * t) + 6.0 * a * b / (t * t) - 2.0 * b * b / t;
  return std::sqrt(3.0) / (M_PI * t * t) * std::exp(expo);
}

PlanePoint exact_step(PlanePoint state, double dt, rng::Philox& gen) {
  if (!(dt > 0.0)) throw std::domain_error("exact_step: dt > 0 required");
  double g1 = gen.next_gaussian();
  double g2 = gen.next_gaussian();
  // Cholesky factor of [[dt^3/3, dt^2/2],[dt^2/2, dt]]:
  //   A = dt^{3/2}/sqrt(3) g1,  B = sqrt(dt) (sqrt(3) g1 + g2)/2.
  double sdt = std::sqrt(dt);
  double area_noise = dt * sdt * (1.0 / std::sqrt(3.0)) * g1;
  double vel_noise = sdt * 0.5 * (std::sqrt(3.0) * g1 + g2);
  return {state.x + state.y * dt + area_noise, state.y + vel_noise};
}

double kappa() {
  return 3.0 * specfun::gamma_fn(0.25) /
         (std::pow(2.0, 0.75) * std::pow(M_PI, 1.5));
}

double bm_survival_asymptotic(PlanePoint z, double t) {
  if (!(t > 0.0)) throw std::domain_error("bm_survival_asymptotic: t > 0 required");
  bool alive = z.x > 0.0 || (z.x == 0.0 && z.y > 0.0);
  if (!alive) {
    throw std::domain_error("bm_survival_asymptotic: start in the killed region");
  }
  return kappa() * harmonic::h_eval(z) / std::pow(t, 0.25);
}

std::uint64_t default_bm_steps(double t) {
  return static_cast<std::uint64_t>(std::ceil(64.0 * t));
}

BmSurvivalEstimate mc_bm_survival(PlanePoint z, double t, std::uint64_t n_steps,
                                  std::uint64_t n_paths, std::uint64_t master_seed,
                                  const mc::RunPolicy& policy) {
  if (n_paths == 0) throw std::invalid_argument("mc_bm_survival: n_paths > 0");
  if (t == 0.0) {
    return {{1.0, 0.0, n_paths, master_seed, 0}, 0, 0.0};
  }
  if (!(t > 0.0)) throw std::domain_error("mc_bm_survival: t >= 0 required");
  if (!(z.x > 0.0)) {
    throw std::domain_error("mc_bm_survival: start strictly inside the quadrant");
  }
  if (n_steps < 100) {
    throw std::invalid_argument("mc_bm_survival: n_steps >= 100 required");
  }

  const double dt = t / static_cast<double>(n_steps);
  const std::uint32_t n_chunks = mc::chunk_count(n_paths, policy.chunk_size);
  auto partials = mc::run_chunks<mc::MomentAccumulator>(
      n_chunks, policy, [&](std::uint32_t c) {
        mc::MomentAccumulator acc;
        rng::Philox gen(rng::chunk_seed(master_seed, policy.chunk_offset + c));
        std::uint64_t begin = mc::chunk_begin(c, policy.chunk_size);
        std::uint64_t end =
            std::min<std::uint64_t>(begin + policy.chunk_size, n_paths);
        const double sdt = std::sqrt(dt);
        const double area_coef = dt * sdt / std::sqrt(3.0);
        const double vel_coef = sdt * 0.5;
        const double sqrt3 = std::sqrt(3.0);
        for (std::uint64_t i = begin; i < end; ++i) {
          double x = z.x, y = z.y;
          bool alive = true;
          for (std::uint64_t k = 0; k < n_steps; ++k) {
            double g1 = gen.next_gaussian();
            double g2 = gen.next_gaussian();
            x += y * dt + area_coef * g1;
            y += vel_coef * (sqrt3 * g1 + g2);
            if (x <= 0.0) {
              alive = false;
              break;
            }
          }
          acc.add(alive ? 1.0 : 0.0);
        }
        return acc;
      });

  mc::MomentAccumulator total = mc::pairwise_merge(partials);
  return {total.estimate(master_seed, n_chunks), n_steps, dt};
}

}  // namespace persistkit::diffusion
