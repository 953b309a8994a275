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

// Compensated double-double arithmetic (Dekker/Knuth error-free transforms).
// Internal to the special-function kernels; roughly 31 significant digits.
// Requires IEEE double semantics: never compile this TU with -ffast-math.

#pragma once

#include <cmath>
#include <cstdlib>

namespace persistkit::detail {

struct dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd quick_two_sum(double a, double b) {
  // assumes |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  // Dekker split; avoids a dependence on hardware FMA
  constexpr double splitter = 134217729.0;  // 2^27 + 1
  double p = a * b;
  double at = splitter * a;
  double ahi = at - (at - a);
  double alo = a - ahi;
  double bt = splitter * b;
  double bhi = bt - (bt - b);
  double blo = b - bhi;
  double err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
  return {p, err};
}

inline dd dd_add(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  dd t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd dd_add(dd a, double b) {
  dd s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }
inline dd dd_sub(dd a, dd b) { return dd_add(a, dd_neg(b)); }
inline dd dd_sub(dd a, double b) { return dd_add(a, -b); }

inline dd dd_mul(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul(dd a, double b) {
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  dd q = quick_two_sum(q1, q2);
  return dd_add(q, q3);
}

inline dd dd_div(dd a, double b) { return dd_div(a, dd{b, 0.0}); }
inline dd dd_div(double a, dd b) { return dd_div(dd{a, 0.0}, b); }

inline dd dd_ldexp(dd a, int n) { return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)}; }

inline constexpr dd kDdLn2{6.93147180559945286e-01, 2.31904681384629956e-17};
inline constexpr dd kDdSqrt2Pi{2.50662827463100069e+00, -1.83285799804591668e-16};

// exp(a) for |a.hi| <= ~700: range-reduce by ln 2, Taylor on |r| <= ln2/2.
inline dd dd_exp(dd a) {
  if (a.hi > 709.0) return {HUGE_VAL, 0.0};
  if (a.hi < -709.0) return {0.0, 0.0};
  double k = std::nearbyint(a.hi / kDdLn2.hi);
  dd r = dd_sub(a, dd_mul(kDdLn2, k));
  dd sum = dd_add(dd{1.0, 0.0}, r);
  dd term = r;
  for (int n = 2; n <= 32; ++n) {
    term = dd_div(dd_mul(term, r), static_cast<double>(n));
    sum = dd_add(sum, term);
    if (std::fabs(term.hi) < 1e-35 * std::fabs(sum.hi)) break;
  }
  return dd_ldexp(sum, static_cast<int>(k));
}

// log(a) for a.hi > 0: one Newton refinement of the double-precision seed.
inline dd dd_log(dd a) {
  double x0 = std::log(a.hi);
  dd e = dd_exp(dd{-x0, 0.0});
  dd corr = dd_sub(dd_mul(a, e), 1.0);
  return dd_add(corr, x0);
}

inline dd dd_pow(dd base, dd expo) { return dd_exp(dd_mul(dd_log(base), expo)); }

}  // namespace persistkit::detail
