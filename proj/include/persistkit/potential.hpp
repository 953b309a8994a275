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

// Discrete potential theory for the killed integrated walk.
//
// The corrector f(z) = E_z h(Z_1) - h(z) measures how far h is from being
// harmonic for the walk; summing it along trajectories converts h into the
// discrete harmonic function
//
//   V(z) = h(z) + E_z sum_{l=0}^{tau-1} f(Z_l)            (series form)
//   V(z) = lim_n E_z[h(Z_n); tau > n]                     (limit form)
//
// with E_z[V(Z_1); tau > 1] = V(z). Both estimators, the martingale probe
// Y_n = h(Z_n) - sum_{k<n} f(Z_k), the amplitude constant
// C = E[V((X,X)); X > 0] and the conditional endpoint law live here.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "persistkit/dist.hpp"
#include "persistkit/harmonic.hpp"
#include "persistkit/mc.hpp"
#include "persistkit/walk.hpp"

namespace persistkit::potential {

using harmonic::PlanePoint;

enum class Quadrature { exact_sum, adaptive };

struct CorrectorSpec {
  dist::IncrementDistribution dist;
  Quadrature quadrature = Quadrature::adaptive;
  // Quantile beyond which the integrand tail is dropped; the neglected mass
  // is bounded analytically far below the quadrature tolerance.
  double tail_cut = 1e-16;
  // Monte Carlo drivers may trade h accuracy (~1e-6 near the U crossover) for
  // a severalfold speedup; exact identities keep the full path.
  specfun::UPrecision h_accuracy = specfun::UPrecision::full;
};

// exact_sum for finite-support laws, adaptive quadrature otherwise.
CorrectorSpec make_corrector_spec(
    const dist::IncrementDistribution& d,
    specfun::UPrecision h_accuracy = specfun::UPrecision::full);

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientSurvivors : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// E h(x+y+X, y+X) with the zero-extended h; defined for every z.
double mean_h_next(const CorrectorSpec& spec, PlanePoint z);

// f(z) = E_z h(Z_1) - h(z); rejects dead states (x <= 0).
double corrector_f(const CorrectorSpec& spec, PlanePoint z);

// Corrector for the unkilled walk of the martingale lemma: h(z) is read
// through the zero extension, so x <= 0 is allowed.
double corrector_f_unkilled(const CorrectorSpec& spec, PlanePoint z);

struct VSeriesEstimate {
  mc::McEstimate estimate;
  // Raw moments of the per-path corrector sums (before adding h(z)); two
  // sub-runs that split a power-of-two chunk count merge exactly into the
  // combined run through MomentAccumulator::merge.
  mc::MomentAccumulator moments;
  double censored_fraction = 0.0;  // paths still alive at the horizon
  double mean_visited = 0.0;       // mean number of corrector terms per path
};

// V(z) ~ h(z) + mean of sum_{l=0}^{min(tau,horizon)-1} f(Z_l); censored paths
// contribute their partial sums (truncation bias is visible through
// censored_fraction).
VSeriesEstimate estimate_V_series(const CorrectorSpec& spec, PlanePoint z,
                                  std::uint64_t horizon, std::uint64_t n_paths,
                                  std::uint64_t master_seed,
                                  const mc::RunPolicy& policy = mc::default_policy());

// E_z[h(Z_n); tau > n] for each n in ns (increasing); plateaus at V_0(z).
std::vector<mc::McEstimate> estimate_V0_limit(
    const CorrectorSpec& spec, PlanePoint z, const std::vector<std::uint64_t>& ns,
    std::uint64_t n_paths, std::uint64_t master_seed,
    const mc::RunPolicy& policy = mc::default_policy());

struct HarmonicityCheck {
  mc::McEstimate lhs;  // E_z[V(Z_1); tau > 1]
  mc::McEstimate rhs;  // V(z)
  double z_score = 0.0;
};

struct HarmonicityParams {
  std::uint64_t horizon = 4096;       // inner V-series horizon
  std::uint64_t n_paths_inner = 20000;
  std::uint64_t n_outer = 64;         // outer draws for continuous laws
};

// One-step harmonicity E_z[V(Z_1); tau>1] = V(z). Finite-support laws use the
// exact successor sum (no outer Monte Carlo); continuous laws nest inner V
// estimates inside an outer sample, with independent seeds per inner run and
// all noise propagated into z_score.
HarmonicityCheck check_harmonicity(const CorrectorSpec& spec, PlanePoint z,
                                   const HarmonicityParams& params,
                                   std::uint64_t master_seed,
                                   const mc::RunPolicy& policy = mc::default_policy());

struct MartingaleProbe {
  PlanePoint start;
  std::vector<std::uint64_t> ns;
  std::vector<mc::McEstimate> means;  // each should equal h(start) within noise
};

// Means of Y_n = h(Z_n) - sum_{k<n} f(Z_k) along the unkilled walk.
MartingaleProbe martingale_probe(const CorrectorSpec& spec, PlanePoint z,
                                 const std::vector<std::uint64_t>& ns,
                                 std::uint64_t n_paths, std::uint64_t master_seed,
                                 const mc::RunPolicy& policy = mc::default_policy());

struct AmplitudeParams {
  std::uint64_t horizon = 4096;    // inner V-series horizon
  std::uint64_t n_outer = 128;     // outer X draws for continuous laws
};

// C = E[V((X,X)); X > 0]; for finite-support laws an exact sum over positive
// atoms of nested V estimates.
mc::McEstimate amplitude_C(const CorrectorSpec& spec, std::uint64_t n_paths,
                           const AmplitudeParams& params, std::uint64_t master_seed,
                           const mc::RunPolicy& policy = mc::default_policy());

struct ConditionalCloud {
  std::vector<PlanePoint> points;  // (S_n^{(2)}/n^{3/2}, S_n/n^{1/2}) of survivors
  std::uint64_t n_paths = 0;
  std::uint64_t survivors = 0;
  double fit_distance = 0.0;  // binned L1 distance to the h g_1 limit density
};

// Rescaled endpoint cloud conditioned on tau > n, plus a goodness-of-fit
// distance against the normalized density proportional to h(x,y) g_1(0,0;x,y).
// Throws InsufficientSurvivors below min_survivors.
ConditionalCloud conditional_limit_sample(
    const dist::IncrementDistribution& d, PlanePoint z, std::uint64_t n,
    std::uint64_t n_paths, std::uint64_t min_survivors, std::uint64_t master_seed,
    const mc::RunPolicy& policy = mc::default_policy());

// Integral of h(x,y) g_1(0,0;x,y) over the half-plane x > 0 (finite and
// positive; computed by quadrature, cached after the first call).
double limit_density_normalization();

}  // namespace persistkit::potential
