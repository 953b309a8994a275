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

// Test-only oracles, kept independent of the production evaluation paths:
//  - gamma via a plain-double Lanczos expansion (production wraps std::tgamma,
//    and the U connection coefficients use a separate dd Spouge expansion);
//  - Tricomi U via its integral representation
//        U(a,b,s) = 1/Gamma(a) int_0^inf e^{-st} t^{a-1} (1+t)^{b-a-1} dt
//    by tanh-sinh / exp-sinh quadrature (a > 0 only; negative a is reached by
//    applying the same downward recurrence to oracle values);
//  - central finite differences with alpha-scaled steps.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "persistkit/harmonic.hpp"

namespace oracles {

// Lanczos approximation (g = 7, 9 terms): relative error ~1e-14 on the
// positive axis; reflection handles the negative side.
inline double gamma_lanczos(double x) {
  static const double c[9] = {0.99999999999980993,     676.5203681218851,
                              -1259.1392167224028,     771.32342877765313,
                              -176.61502916214059,     12.507343278686905,
                              -0.13857109526572012,    9.9843695780195716e-6,
                              1.5056327351493116e-7};
  if (x < 0.5) {
    if (x == std::floor(x)) throw std::domain_error("gamma_lanczos: pole");
    return M_PI / (std::sin(M_PI * x) * gamma_lanczos(1.0 - x));
  }
  double z = x - 1.0;
  double sum = c[0];
  for (int i = 1; i < 9; ++i) sum += c[i] / (z + i);
  double t = z + 7.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

inline double u_oracle(double a, double b, double s) {
  if (a < 0.0) {
    // same three-term recurrence as production, but over oracle values
    double next = a + 1.0;
    double u1 = u_oracle(next, b, s);
    double u2 = u_oracle(next + 1.0, b, s);
    return (2.0 * next - b + s) * u1 - next * (next - b + 1.0) * u2;
  }
  if (a == 0.0) return 1.0;
  // substitute t = w/s so the e^{-st} boundary layer becomes scale-1:
  //   U = s^{-a}/Gamma(a) int_0^inf e^{-w} w^{a-1} (1 + w/s)^{b-a-1} dw
  auto integrand = [&](double w) {
    return std::exp(-w) * std::pow(w, a - 1.0) * std::pow(1.0 + w / s, b - a - 1.0);
  };
  // endpoint singularity w^{a-1} on [0,1], exponential decay on [1, inf)
  boost::math::quadrature::tanh_sinh<double> head;
  double head_part = head.integrate(integrand, 0.0, 1.0, 1e-13);
  boost::math::quadrature::exp_sinh<double> tail;
  double tail_part = tail.integrate(
      [&](double w) { return integrand(1.0 + w); }, 1e-13);
  return std::pow(s, -a) * (head_part + tail_part) / gamma_lanczos(a);
}

// Central finite differences of h with the alpha-scaled steps: dx ~ 1e-4 a^3,
// dy ~ 1e-4 a (h varies on the alpha scale).
inline double fd_step_x(persistkit::harmonic::PlanePoint z) {
  double a = persistkit::harmonic::alpha(z);
  double step = std::max(1e-4 * a * a * a, 1e-6);
  return std::min(step, 0.4 * z.x);  // stay inside {x > 0}
}

inline double fd_step_y(persistkit::harmonic::PlanePoint z) {
  double a = persistkit::harmonic::alpha(z);
  return std::max(1e-4 * a, 1e-6);
}

inline double fd1(const std::function<double(double)>& f, double x0, double step) {
  return (f(x0 + step) - f(x0 - step)) / (2.0 * step);
}

inline double fd2(const std::function<double(double)>& f, double x0, double step) {
  return (f(x0 + step) - 2.0 * f(x0) + f(x0 - step)) / (step * step);
}

}  // namespace oracles
