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

// The harmonic function h of the Kolmogorov diffusion killed at leaving the
// half-plane {x > 0}, extended by zero to the whole plane:
//
//   h(x,y) = (2/9)^{1/6} y x^{-1/6} U(1/6, 4/3, 2y^3/9x)              y >= 0
//   h(x,y) = -(2/9)^{1/6} (y/6) x^{-1/6} e^{2y^3/9x} U(7/6, 4/3, -2y^3/9x)
//                                                                     y < 0
//   h = 0 for x <= 0; the y = 0 value is the continuous limit
//   (9/2)^{1/6} G(1/3)/G(1/6) x^{1/6}.
//
// h satisfies y h_x + (1/2) h_yy = 0, scales as h(l^3 x, l y) = sqrt(l) h(x,y)
// and behaves like sqrt(alpha) with alpha(x,y) = max(|x|^{1/3}, |y|).
//
// All functions here are pure.

#pragma once

#include "persistkit/specfun.hpp"

namespace persistkit::harmonic {

struct PlanePoint {
  double x = 0.0;  // area coordinate
  double y = 0.0;  // velocity coordinate
};

// Gauge alpha(x,y) = max(|x|^{1/3}, |y|).
double alpha(PlanePoint z);

// h with the zero extension; total on finite inputs, throws
// std::invalid_argument on non-finite components.
double h_eval(PlanePoint z,
              specfun::UPrecision prec = specfun::UPrecision::full);

struct DerivativeOrder {
  int i = 0;  // order in x
  int j = 0;  // order in y, 0 or 1 (higher y-orders via the PDE reduction)
};

// Closed-form partial derivative d^{i+j} h / dx^i dy^j for x > 0 (one-sided
// limits at y = 0). Throws std::domain_error for x <= 0 or j not in {0,1}.
double h_partial(PlanePoint z, DerivativeOrder ord);

// PDE reductions: h_yy = -2 y h_x and h_yyy = -2 h_x - 2 y h_xy.
double h_yy(PlanePoint z);
double h_yyy(PlanePoint z);

// Coefficients C_0 = 1, C_{i+1} = -C_i (i + 1/6)(i - 1/6) of the x-derivative
// ladder.
double derivative_coefficient(int i);

// Band constants for h/sqrt(alpha) on the closed quadrant, calibrated once
// over the grid [1e-2,1e3]^2 (observed range [0.6184, 1.0626]) and frozen.
inline constexpr double kHBandLower = 0.61;
inline constexpr double kHBandUpper = 1.07;

struct HBoundTriple {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
};

// (kHBandLower sqrt(alpha), h(z), kHBandUpper sqrt(alpha)); the lower bound is
// only asserted on the open quadrant, elsewhere it is reported as 0.
HBoundTriple h_bound_check(PlanePoint z);

}  // namespace persistkit::harmonic
