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

// Real-argument special functions: gamma, Kummer M, Tricomi U.
//
// Tricomi U is evaluated by two routes joined at kUCrossover:
//   s <  kUCrossover : connection formula
//                        U = G(1-b)/G(a+1-b) M(a,b,s) + G(b-1)/G(a) s^{1-b} M(a-b+1,2-b,s)
//                      summed in compensated double-double arithmetic (the two
//                      terms cancel like e^s, which plain doubles cannot survive
//                      past s ~ 14).
//   s >= kUCrossover : the divergent asymptotic series s^{-a} 2F0(a, a-b+1; -1/s)
//                      truncated at its smallest term.
// Negative a is reached by the downward three-term recurrence in a.
//
// All functions are pure and reentrant.

#pragma once

namespace persistkit::specfun {

// Crossover between connection-formula and asymptotic-series evaluation of U.
// Calibrated against the integral oracle (see the specfun test suite): the
// scheme's worst relative error over the in-scope (a,b) pairs is ~2e-10, at
// the seam for (a,b) = (7/6, 1/3); the pairs h itself uses stay below ~1e-11.
inline constexpr double kUCrossover = 29.0;

// Crossover used by the UPrecision::fast route, where both sides are plain
// double; worst-case relative error near the seam is ~2e-6 at b = 4/3 (the
// pair h evaluates) and ~3e-5 at b = 1/3 (asymptotic truncation at a = 7/6).
inline constexpr double kUCrossoverFast = 14.5;

enum class UPrecision {
  full,  // double-double connection regime; default
  fast,  // plain double; for Monte Carlo inner loops
};

// Gamma function. Throws std::domain_error at non-positive integers.
double gamma_fn(double x);

// Kummer's confluent hypergeometric M(a,b,s) = sum (a)_k s^k / ((b)_k k!),
// for s >= 0 and b not a non-positive integer. Relative error <= 1e-12 for
// s <= 50. Throws std::runtime_error if the series fails to converge within
// the term cap, std::domain_error on bad parameters.
double kummer_m(double a, double b, double s);

struct UEval {
  double value = 0.0;
  // Set when cancellation in the connection formula (or truncation of the
  // asymptotic series) makes the estimated relative error exceed 1e-10 (full)
  // or 1e-6 (fast).
  bool precision_warning = false;
};

// Tricomi's confluent hypergeometric U(a,b,s). Requires s > 0 and b a
// non-integer in (0,2); throws std::domain_error otherwise.
UEval tricomi_u_checked(double a, double b, double s,
                        UPrecision prec = UPrecision::full);

double tricomi_u(double a, double b, double s);

// Route-level access (a >= 0) for the crossover calibration test, which scans
// candidate crossover points against the integral oracle.
double tricomi_u_connection_route(double a, double b, double s);
double tricomi_u_asymptotic_route(double a, double b, double s);

}  // namespace persistkit::specfun
