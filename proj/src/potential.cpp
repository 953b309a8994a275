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

#include "persistkit/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "persistkit/diffusion.hpp"

namespace persistkit::potential {

namespace {

using boost::math::quadrature::gauss_kronrod;
using dist::IncrementDistribution;
using dist::Kind;

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * M_PI);
const double kSqrt3 = std::sqrt(3.0);
const double kLaplaceScale = 1.0 / std::sqrt(2.0);

double pdf(const IncrementDistribution& d, double u) {
  switch (d.kind) {
    case Kind::gaussian:
      return kInvSqrt2Pi * std::exp(-0.5 * u * u);
    case Kind::uniform:
      return (std::fabs(u) <= kSqrt3) ? 1.0 / (2.0 * kSqrt3) : 0.0;
    case Kind::laplace:
      return 0.5 / kLaplaceScale * std::exp(-std::fabs(u) / kLaplaceScale);
    default:
      throw std::logic_error("pdf: continuous law expected");
  }
}

struct Range {
  double lo, hi;
};

Range integration_range(const IncrementDistribution& d, double tail_cut) {
  switch (d.kind) {
    case Kind::gaussian: {
      // exp(-T^2/2) <= tail_cut already over-covers the Mills-ratio tail
      double t = std::sqrt(-2.0 * std::log(tail_cut)) + 1.0;
      return {-t, t};
    }
    case Kind::uniform:
      return {-kSqrt3, kSqrt3};
    case Kind::laplace: {
      double t = -kLaplaceScale * std::log(tail_cut) + 1.0;
      return {-t, t};
    }
    default:
      throw std::logic_error("integration_range: continuous law expected");
  }
}

double h_at(const CorrectorSpec& spec, PlanePoint z) {
  return harmonic::h_eval(z, spec.h_accuracy);
}

double mean_h_next_exact(const CorrectorSpec& spec, PlanePoint z) {
  double total = 0.0;
  for (const auto& [value, prob] : dist::atoms(spec.dist)) {
    total += prob * h_at(spec, {z.x + z.y + value, z.y + value});
  }
  return total;
}

// 12-point Gauss-Legendre rule on [-1,1], nodes found once by Newton on P_12.
struct Gl12 {
  double node[12];
  double weight[12];
};

const Gl12& gl12() {
  static const Gl12 rule = [] {
    Gl12 r{};
    constexpr int n = 12;
    for (int i = 0; i < n / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 60; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-16) break;
      }
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double w = 2.0 / ((1.0 - x * x) * dp * dp);
      r.node[i] = -x;
      r.node[n - 1 - i] = x;
      r.weight[i] = w;
      r.weight[n - 1 - i] = w;
    }
    return r;
  }();
  return rule;
}

template <class F>
double gl12_segment(const F& f, double a, double b) {
  const Gl12& r = gl12();
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 12; ++i) acc += r.weight[i] * f(mid + half * r.node[i]);
  return acc * half;
}

double mean_h_next_quadrature(const CorrectorSpec& spec, PlanePoint z) {
  const auto& d = spec.dist;
  Range range = integration_range(d, spec.tail_cut);
  const double u_kill = -(z.x + z.y);  // x-coordinate of Z_1 crosses zero
  const double u_seam = -z.y;          // y-coordinate of Z_1 crosses zero
  if (range.hi <= u_kill) return 0.0;  // Z_1 is dead for the whole range

  const double lo_cut = std::max(range.lo, u_kill);
  std::vector<double> cuts = {lo_cut, range.hi};
  auto add_cut = [&](double c) {
    if (c > lo_cut && c < range.hi) cuts.push_back(c);
  };
  add_cut(u_seam);
  if (d.kind == Kind::laplace) add_cut(0.0);
  if (u_kill > range.lo) {
    // h rises from the kill threshold with an essential-singularity profile
    // (flat to every order, then steep), and the y-branch seam sits exactly
    // x above the threshold; graded panels on both scales isolate the corner
    double width = range.hi - u_kill;
    double gap = u_seam - u_kill;  // equals z.x
    for (double frac : {1e-6, 1e-4, 1e-2, 0.1}) {
      add_cut(u_kill + frac * width);
      if (gap > 0.0) {
        add_cut(u_kill + frac * gap);
        add_cut(u_seam + frac * width);
      }
    }
    if (gap > 0.0) add_cut(u_kill + 0.5 * gap);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto integrand = [&](double u) {
    return pdf(d, u) * h_at(spec, {z.x + z.y + u, z.y + u});
  };

  if (spec.h_accuracy == specfun::UPrecision::fast) {
    // Monte Carlo mode: composite fixed GL-12 over the same seams, smooth
    // stretches capped at length 2 so each segment is resolved to ~1e-9.
    // Validated against the adaptive full-precision path in the test suite;
    // estimator noise sits orders of magnitude above the rule error.
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double a = cuts[i], b = cuts[i + 1];
      if (b - a <= 0.0) continue;
      int pieces = static_cast<int>(std::ceil((b - a) / 2.0));
      double step = (b - a) / pieces;
      for (int p = 0; p < pieces; ++p) {
        total += gl12_segment(integrand, a + p * step, a + (p + 1) * step);
      }
    }
    if (!std::isfinite(total)) {
      throw QuadratureError("corrector quadrature: non-finite integrand");
    }
    return total;
  }

  // Full precision: adaptive Gauss-Kronrod with the spec tolerance
  // 1e-10 max(1, h) and a hard failure gate.
  double total = 0.0, err_total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i], b = cuts[i + 1];
    if (b - a <= 0.0) continue;
    double err = 0.0;
    total += gauss_kronrod<double, 15>::integrate(integrand, a, b, 15, 1e-11, &err);
    err_total += err;
  }

  double tol = 1e-10 * std::max(1.0, std::fabs(total) + std::fabs(h_at(spec, z)));
  if (!(err_total <= tol) || !std::isfinite(total)) {
    std::ostringstream msg;
    msg << "corrector quadrature failed at z=(" << z.x << "," << z.y
        << "): error estimate " << err_total << " vs tolerance " << tol;
    throw QuadratureError(msg.str());
  }
  return total;
}

// mix a tag into nested-estimator seeds so inner runs never share streams
std::uint64_t sub_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t i) {
  return rng::chunk_seed(rng::mix64(master ^ (tag * 0xA5A5A5A5A5A5A5A5ULL)), i);
}

}  // namespace

CorrectorSpec make_corrector_spec(const IncrementDistribution& d,
                                  specfun::UPrecision h_accuracy) {
  CorrectorSpec spec;
  spec.dist = d;
  spec.quadrature =
      dist::has_finite_support(d) ? Quadrature::exact_sum : Quadrature::adaptive;
  spec.h_accuracy = h_accuracy;
  return spec;
}

double mean_h_next(const CorrectorSpec& spec, PlanePoint z) {
  if (spec.quadrature == Quadrature::exact_sum) {
    if (!dist::has_finite_support(spec.dist)) {
      throw std::invalid_argument("corrector: exact_sum needs finite support");
    }
    return mean_h_next_exact(spec, z);
  }
  return mean_h_next_quadrature(spec, z);
}

double corrector_f(const CorrectorSpec& spec, PlanePoint z) {
  if (!(z.x > 0.0)) {
    throw std::domain_error("corrector_f: dead state (x <= 0); "
                            "use corrector_f_unkilled for the martingale walk");
  }
  return mean_h_next(spec, z) - h_at(spec, z);
}

double corrector_f_unkilled(const CorrectorSpec& spec, PlanePoint z) {
  double hz = (z.x > 0.0) ? h_at(spec, z) : 0.0;
  return mean_h_next(spec, z) - hz;
}

VSeriesEstimate estimate_V_series(const CorrectorSpec& spec, PlanePoint z,
                                  std::uint64_t horizon, std::uint64_t n_paths,
                                  std::uint64_t master_seed,
                                  const mc::RunPolicy& policy) {
  if (!(z.x > 0.0)) {
    throw std::domain_error("estimate_V_series: start must be alive (x > 0)");
  }
  if (horizon < 1 || n_paths == 0) {
    throw std::invalid_argument("estimate_V_series: horizon, n_paths >= 1");
  }

  const std::uint32_t n_chunks = mc::chunk_count(n_paths, policy.chunk_size);
  struct Partial {
    mc::MomentAccumulator sums;
    std::uint64_t censored = 0;
    std::uint64_t visited = 0;
  };
  auto partials = mc::run_chunks<Partial>(n_chunks, policy, [&](std::uint32_t c) {
    Partial p;
    rng::Philox gen(rng::chunk_seed(master_seed, policy.chunk_offset + c));
    std::uint64_t begin = mc::chunk_begin(c, policy.chunk_size);
    std::uint64_t end = std::min<std::uint64_t>(begin + policy.chunk_size, n_paths);
    for (std::uint64_t i = begin; i < end; ++i) {
      walk::ExitSample s = walk::simulate_exit(
          spec.dist, z, horizon, gen,
          [&](PlanePoint state) { return corrector_f(spec, state); });
      p.sums.add(s.corrector_sum);
      p.censored += s.survived ? 1 : 0;
      p.visited += std::min(s.exit_time, horizon + 1) - 1;
    }
    return p;
  });

  std::vector<mc::MomentAccumulator> sum_parts;
  sum_parts.reserve(partials.size());
  std::uint64_t censored = 0, visited = 0;
  for (const auto& p : partials) {
    sum_parts.push_back(p.sums);
    censored += p.censored;
    visited += p.visited;
  }
  mc::MomentAccumulator sums = mc::pairwise_merge(sum_parts);

  VSeriesEstimate out;
  out.moments = sums;
  out.estimate = sums.estimate(master_seed, n_chunks);
  out.estimate.value += harmonic::h_eval(z);  // V = h + E sum f
  out.censored_fraction = static_cast<double>(censored) / static_cast<double>(n_paths);
  out.mean_visited = static_cast<double>(visited) / static_cast<double>(n_paths);
  return out;
}

std::vector<mc::McEstimate> estimate_V0_limit(const CorrectorSpec& spec,
                                              PlanePoint z,
                                              const std::vector<std::uint64_t>& ns,
                                              std::uint64_t n_paths,
                                              std::uint64_t master_seed,
                                              const mc::RunPolicy& policy) {
  if (ns.empty() || !std::is_sorted(ns.begin(), ns.end())) {
    throw std::invalid_argument("estimate_V0_limit: ns must be increasing");
  }
  const std::uint64_t horizon = ns.back();
  const std::uint32_t n_chunks = mc::chunk_count(n_paths, policy.chunk_size);
  const double h_start = harmonic::h_eval(z);

  struct Partial {
    std::vector<mc::MomentAccumulator> rows;
  };
  auto partials = mc::run_chunks<Partial>(n_chunks, policy, [&](std::uint32_t c) {
    Partial p;
    p.rows.resize(ns.size());
    rng::Philox gen(rng::chunk_seed(master_seed, policy.chunk_offset + c));
    std::uint64_t begin = mc::chunk_begin(c, policy.chunk_size);
    std::uint64_t end = std::min<std::uint64_t>(begin + policy.chunk_size, n_paths);
    for (std::uint64_t i = begin; i < end; ++i) {
      double x = z.x, y = z.y;
      std::uint64_t tau = horizon + 1;  // censored marker
      std::size_t row = 0;
      while (row < ns.size() && ns[row] == 0) {
        p.rows[row].add(h_start);
        ++row;
      }
      for (std::uint64_t k = 1; k <= horizon && row < ns.size(); ++k) {
        y += dist::sample_increment(spec.dist, gen);
        x += y;
        if (x <= 0.0) {
          tau = k;
          break;
        }
        if (k == ns[row]) {
          p.rows[row].add(harmonic::h_eval({x, y}));
          ++row;
        }
      }
      if (tau <= horizon) {
        for (; row < ns.size(); ++row) p.rows[row].add(0.0);
      }
    }
    return p;
  });

  std::vector<mc::McEstimate> out(ns.size());
  for (std::size_t r = 0; r < ns.size(); ++r) {
    std::vector<mc::MomentAccumulator> row;
    row.reserve(partials.size());
    for (const auto& p : partials) row.push_back(p.rows[r]);
    out[r] = mc::pairwise_merge(row).estimate(master_seed, n_chunks);
  }
  return out;
}

HarmonicityCheck check_harmonicity(const CorrectorSpec& spec, PlanePoint z,
                                   const HarmonicityParams& params,
                                   std::uint64_t master_seed,
                                   const mc::RunPolicy& policy) {
  if (!(z.x > 0.0)) {
    throw std::domain_error("check_harmonicity: start must be alive");
  }

  VSeriesEstimate rhs = estimate_V_series(spec, z, params.horizon,
                                          params.n_paths_inner,
                                          sub_seed(master_seed, 1, 0), policy);

  mc::McEstimate lhs;
  lhs.seed = master_seed;
  if (dist::has_finite_support(spec.dist)) {
    // Exact one-step sum over successors; only nested-V noise remains.
    double value = 0.0, var = 0.0;
    std::uint64_t n_total = 0;
    std::uint64_t i = 0;
    for (const auto& [atom, prob] : dist::atoms(spec.dist)) {
      PlanePoint z1{z.x + z.y + atom, z.y + atom};
      ++i;
      if (!(z1.x > 0.0)) continue;  // killed successor contributes 0
      VSeriesEstimate inner = estimate_V_series(spec, z1, params.horizon,
                                                params.n_paths_inner,
                                                sub_seed(master_seed, 2, i), policy);
      value += prob * inner.estimate.value;
      var += prob * prob * inner.estimate.stderr_value * inner.estimate.stderr_value;
      n_total += inner.estimate.n_samples;
    }
    lhs.value = value;
    lhs.stderr_value = std::sqrt(var);
    lhs.n_samples = n_total;
  } else {
    // Outer sample over X with nested inner estimates; the outer spread
    // already contains the inner noise.
    rng::Philox outer(sub_seed(master_seed, 3, 0));
    mc::MomentAccumulator acc;
    for (std::uint64_t k = 0; k < params.n_outer; ++k) {
      double inc = dist::sample_increment(spec.dist, outer);
      PlanePoint z1{z.x + z.y + inc, z.y + inc};
      if (!(z1.x > 0.0)) {
        acc.add(0.0);
        continue;
      }
      VSeriesEstimate inner = estimate_V_series(spec, z1, params.horizon,
                                                params.n_paths_inner,
                                                sub_seed(master_seed, 4, k), policy);
      acc.add(inner.estimate.value);
    }
    lhs = acc.estimate(master_seed, 0);
  }

  HarmonicityCheck out;
  out.lhs = lhs;
  out.rhs = rhs.estimate;
  double denom = std::hypot(lhs.stderr_value, rhs.estimate.stderr_value);
  out.z_score = (denom > 0.0) ? std::fabs(lhs.value - rhs.estimate.value) / denom
                              : (lhs.value == rhs.estimate.value ? 0.0 : INFINITY);
  return out;
}

MartingaleProbe martingale_probe(const CorrectorSpec& spec, PlanePoint z,
                                 const std::vector<std::uint64_t>& ns,
                                 std::uint64_t n_paths, std::uint64_t master_seed,
                                 const mc::RunPolicy& policy) {
  if (ns.empty() || !std::is_sorted(ns.begin(), ns.end())) {
    throw std::invalid_argument("martingale_probe: ns must be increasing");
  }
  const std::uint64_t horizon = ns.back();
  const std::uint32_t n_chunks = mc::chunk_count(n_paths, policy.chunk_size);
  const double h_start = (z.x > 0.0) ? harmonic::h_eval(z) : 0.0;

  struct Partial {
    std::vector<mc::MomentAccumulator> rows;
  };
  auto partials = mc::run_chunks<Partial>(n_chunks, policy, [&](std::uint32_t c) {
    Partial p;
    p.rows.resize(ns.size());
    rng::Philox gen(rng::chunk_seed(master_seed, policy.chunk_offset + c));
    std::uint64_t begin = mc::chunk_begin(c, policy.chunk_size);
    std::uint64_t end = std::min<std::uint64_t>(begin + policy.chunk_size, n_paths);
    for (std::uint64_t i = begin; i < end; ++i) {
      double x = z.x, y = z.y;
      double fsum = 0.0;
      std::size_t row = 0;
      while (row < ns.size() && ns[row] == 0) {
        p.rows[row].add(h_start);  // Y_0 = h(z)
        ++row;
      }
      for (std::uint64_t k = 1; k <= horizon && row < ns.size(); ++k) {
        fsum += corrector_f_unkilled(spec, {x, y});
        y += dist::sample_increment(spec.dist, gen);
        x += y;
        if (k == ns[row]) {
          double hz = (x > 0.0) ? harmonic::h_eval({x, y}, spec.h_accuracy) : 0.0;
          p.rows[row].add(hz - fsum);
          ++row;
        }
      }
    }
    return p;
  });

  MartingaleProbe probe;
  probe.start = z;
  probe.ns = ns;
  probe.means.resize(ns.size());
  for (std::size_t r = 0; r < ns.size(); ++r) {
    std::vector<mc::MomentAccumulator> row;
    row.reserve(partials.size());
    for (const auto& p : partials) row.push_back(p.rows[r]);
    probe.means[r] = mc::pairwise_merge(row).estimate(master_seed, n_chunks);
  }
  return probe;
}

mc::McEstimate amplitude_C(const CorrectorSpec& spec, std::uint64_t n_paths,
                           const AmplitudeParams& params, std::uint64_t master_seed,
                           const mc::RunPolicy& policy) {
  if (dist::has_finite_support(spec.dist)) {
    double value = 0.0, var = 0.0;
    std::uint64_t n_total = 0;
    std::uint64_t i = 0;
    for (const auto& [atom, prob] : dist::atoms(spec.dist)) {
      ++i;
      if (!(atom > 0.0)) continue;
      VSeriesEstimate inner =
          estimate_V_series(spec, {atom, atom}, params.horizon, n_paths,
                            sub_seed(master_seed, 5, i), policy);
      value += prob * inner.estimate.value;
      var += prob * prob * inner.estimate.stderr_value * inner.estimate.stderr_value;
      n_total += inner.estimate.n_samples;
    }
    return {value, std::sqrt(var), n_total, master_seed, 0};
  }

  rng::Philox outer(sub_seed(master_seed, 6, 0));
  mc::MomentAccumulator acc;
  for (std::uint64_t k = 0; k < params.n_outer; ++k) {
    double x = dist::sample_increment(spec.dist, outer);
    if (!(x > 0.0)) {
      acc.add(0.0);
      continue;
    }
    VSeriesEstimate inner = estimate_V_series(spec, {x, x}, params.horizon, n_paths,
                                              sub_seed(master_seed, 7, k), policy);
    acc.add(inner.estimate.value);
  }
  return acc.estimate(master_seed, 0);
}

// ---------------------------------------------------------------------------
// Conditional limit law.
// ---------------------------------------------------------------------------

namespace {

double limit_density_unnormalized(double x, double y) {
  return harmonic::h_eval({x, y}) *
         diffusion::transition_density(1.0, {0.0, 0.0}, {x, y});
}

// Comparison window and grid for the goodness-of-fit distance. The limit
// density's x-marginal has std ~0.58 and y-marginal std 1, so [0,4]x[-4,4]
// carries all but ~1e-4 of the mass.
constexpr double kFitXMax = 4.0;
constexpr double kFitYMax = 4.0;
constexpr int kFitNx = 12;
constexpr int kFitNy = 16;

const std::vector<double>& fit_model_bins() {
  static const std::vector<double> bins = [] {
    // 4-point Gauss-Legendre nodes per axis and bin
    constexpr double gl_x[4] = {-0.8611363115940526, -0.3399810435848563,
                                0.3399810435848563, 0.8611363115940526};
    constexpr double gl_w[4] = {0.3478548451374538, 0.6521451548625461,
                                0.6521451548625461, 0.3478548451374538};
    std::vector<double> out(kFitNx * kFitNy, 0.0);
    double dx = kFitXMax / kFitNx;
    double dy = 2.0 * kFitYMax / kFitNy;
    double total = 0.0;
    for (int ix = 0; ix < kFitNx; ++ix) {
      for (int iy = 0; iy < kFitNy; ++iy) {
        double x0 = ix * dx, y0 = -kFitYMax + iy * dy;
        double v = 0.0;
        for (int a = 0; a < 4; ++a) {
          for (int b = 0; b < 4; ++b) {
            double x = x0 + dx * 0.5 * (1.0 + gl_x[a]);
            double y = y0 + dy * 0.5 * (1.0 + gl_x[b]);
            v += gl_w[a] * gl_w[b] * limit_density_unnormalized(x, y);
          }
        }
        v *= dx * dy * 0.25;
        out[ix * kFitNy + iy] = v;
        total += v;
      }
    }
    for (double& v : out) v /= total;  // renormalized over the window
    return out;
  }();
  return bins;
}

}  // namespace

double limit_density_normalization() {
  static const double value = [] {
    auto inner = [](double x) {
      auto f = [x](double y) { return limit_density_unnormalized(x, y); };
      double lo = gauss_kronrod<double, 31>::integrate(f, -9.0, 0.0, 10, 1e-9);
      double hi = gauss_kronrod<double, 31>::integrate(f, 0.0, 9.0, 10, 1e-9);
      return lo + hi;
    };
    double head = gauss_kronrod<double, 31>::integrate(inner, 0.0, 1.0, 10, 1e-9);
    double tail = gauss_kronrod<double, 31>::integrate(inner, 1.0, 10.0, 10, 1e-9);
    return head + tail;
  }();
  return value;
}

ConditionalCloud conditional_limit_sample(const IncrementDistribution& d,
                                          PlanePoint z, std::uint64_t n,
                                          std::uint64_t n_paths,
                                          std::uint64_t min_survivors,
                                          std::uint64_t master_seed,
                                          const mc::RunPolicy& policy) {
  if (n < 1 || n_paths == 0) {
    throw std::invalid_argument("conditional_limit_sample: n, n_paths >= 1");
  }
  const std::uint32_t n_chunks = mc::chunk_count(n_paths, policy.chunk_size);
  struct Partial {
    std::vector<PlanePoint> pts;
  };
  const double sx = std::pow(static_cast<double>(n), 1.5);
  const double sy = std::sqrt(static_cast<double>(n));
  auto partials = mc::run_chunks<Partial>(n_chunks, policy, [&](std::uint32_t c) {
    Partial p;
    rng::Philox gen(rng::chunk_seed(master_seed, policy.chunk_offset + c));
    std::uint64_t begin = mc::chunk_begin(c, policy.chunk_size);
    std::uint64_t end = std::min<std::uint64_t>(begin + policy.chunk_size, n_paths);
    for (std::uint64_t i = begin; i < end; ++i) {
      walk::ExitSample s = walk::simulate_exit(d, z, n, gen);
      if (s.survived) {
        p.pts.push_back({s.final_state.x / sx, s.final_state.y / sy});
      }
    }
    return p;
  });

  ConditionalCloud cloud;
  cloud.n_paths = n_paths;
  for (auto& p : partials) {
    cloud.points.insert(cloud.points.end(), p.pts.begin(), p.pts.end());
  }
  cloud.survivors = cloud.points.size();
  if (cloud.survivors < min_survivors) {
    std::ostringstream msg;
    msg << "conditional_limit_sample: " << cloud.survivors
        << " survivors at n=" << n << " (need " << min_survivors << ")";
    throw InsufficientSurvivors(msg.str());
  }

  // Binned L1 distance over the comparison window.
  const auto& model = fit_model_bins();
  std::vector<double> emp(model.size(), 0.0);
  double in_window = 0.0;
  const double dx = kFitXMax / kFitNx;
  const double dy = 2.0 * kFitYMax / kFitNy;
  for (const auto& pt : cloud.points) {
    if (pt.x < 0.0 || pt.x >= kFitXMax || pt.y < -kFitYMax || pt.y >= kFitYMax) {
      continue;
    }
    int ix = static_cast<int>(pt.x / dx);
    int iy = static_cast<int>((pt.y + kFitYMax) / dy);
    emp[ix * kFitNy + iy] += 1.0;
    in_window += 1.0;
  }
  double dist_l1 = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    dist_l1 += std::fabs(emp[i] / in_window - model[i]);
  }
  cloud.fit_distance = dist_l1;
  return cloud;
}

}  // namespace persistkit::potential
