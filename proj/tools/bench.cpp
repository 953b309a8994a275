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

// Serial-reference vs OpenMP kernel benchmark. Both run the same chunked
// kernels, so the outputs must agree bit-for-bit; this tool reports the
// throughput ratio and double-checks that agreement.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "persistkit/diffusion.hpp"
#include "persistkit/harmonic.hpp"
#include "persistkit/potential.hpp"
#include "persistkit/specfun.hpp"
#include "persistkit/walk.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class Fn>
double timed(Fn&& fn) {
  auto t0 = Clock::now();
  fn();
  return seconds_since(t0);
}

void row(const char* name, double serial_s, double parallel_s, bool identical) {
  std::printf("%-28s %10.3fs %10.3fs %8.2fx   %s\n", name, serial_s, parallel_s,
              serial_s / parallel_s, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t walk_paths = 200000, bm_paths = 20000;
  if (argc > 1 && std::strcmp(argv[1], "--quick") == 0) {
    walk_paths = 20000;
    bm_paths = 2000;
  }

  persistkit::mc::RunPolicy serial{1, 8192};
  persistkit::mc::RunPolicy parallel = persistkit::mc::default_policy();
  if (parallel.threads < 2) parallel.threads = 2;  // exercise the OpenMP path
  parallel.chunk_size = serial.chunk_size;

  std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    auto d = persistkit::dist::make_gaussian();
    std::vector<std::uint64_t> ns{256, 1024, 4096};
    persistkit::walk::SurvivalCurve a, b;
    double ts = timed([&] {
      a = persistkit::walk::estimate_survival(d, {1, 0}, ns, walk_paths, 11, serial);
    });
    double tp = timed([&] {
      b = persistkit::walk::estimate_survival(d, {1, 0}, ns, walk_paths, 11, parallel);
    });
    bool same = true;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      same = same && a.rows[i].estimate.value == b.rows[i].estimate.value &&
             a.rows[i].estimate.stderr_value == b.rows[i].estimate.stderr_value;
    }
    row("walk survival", ts, tp, same);
  }
  {
    persistkit::diffusion::BmSurvivalEstimate a, b;
    double ts = timed([&] {
      a = persistkit::diffusion::mc_bm_survival({1, 0}, 64.0, 4096, bm_paths, 11,
                                                serial);
    });
    double tp = timed([&] {
      b = persistkit::diffusion::mc_bm_survival({1, 0}, 64.0, 4096, bm_paths, 11,
                                                parallel);
    });
    row("diffusion survival", ts, tp,
        a.estimate.value == b.estimate.value &&
            a.estimate.stderr_value == b.estimate.stderr_value);
  }
  {
    auto spec = persistkit::potential::make_corrector_spec(
        persistkit::dist::make_gaussian(), persistkit::specfun::UPrecision::fast);
    persistkit::potential::VSeriesEstimate a, b;
    double ts = timed([&] {
      a = persistkit::potential::estimate_V_series(spec, {2, 1}, 512,
                                                   bm_paths / 4, 11, serial);
    });
    double tp = timed([&] {
      b = persistkit::potential::estimate_V_series(spec, {2, 1}, 512,
                                                   bm_paths / 4, 11, parallel);
    });
    row("V series (quadrature f)", ts, tp,
        a.estimate.value == b.estimate.value);
  }
  {
    // h evaluation throughput, full vs fast U route (single-threaded)
    volatile double sink = 0.0;
    const int reps = 20000;
    auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i) {
      sink = sink + persistkit::harmonic::h_eval({1.0 + (i & 7), 0.3 * (i & 15) - 2.0});
    }
    double full_us = seconds_since(t0) * 1e6 / reps;
    t0 = Clock::now();
    for (int i = 0; i < reps; ++i) {
      sink = sink + persistkit::harmonic::h_eval({1.0 + (i & 7), 0.3 * (i & 15) - 2.0},
                                           persistkit::specfun::UPrecision::fast);
    }
    double fast_us = seconds_since(t0) * 1e6 / reps;
    std::printf("%-28s %9.2fus %9.2fus %8.2fx   (full vs fast U route)\n",
                "h evaluation", full_us, fast_us, full_us / fast_us);
    (void)sink;
  }
  return 0;
}
