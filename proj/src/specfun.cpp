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

#include "persistkit/specfun.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "dd_real.hpp"

namespace persistkit::specfun {

using detail::dd;
using detail::dd_add;
using detail::dd_div;
using detail::dd_exp;
using detail::dd_ldexp;
using detail::dd_log;
using detail::dd_mul;
using detail::dd_neg;
using detail::dd_pow;
using detail::dd_sub;
using detail::kDdSqrt2Pi;
using detail::two_sum;

namespace {

constexpr int kKummerTermCap = 4000;
constexpr double kDdEps = 1.2e-32;

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// ---------------------------------------------------------------------------
// Gamma in double-double via a Spouge expansion with a = 41 (relative error of
// the expansion ~1e-33 for Re z > 0). Used only for the connection-formula
// coefficients, where the two terms cancel and full dd accuracy is required.
// ---------------------------------------------------------------------------

constexpr int kSpougeA = 41;

const std::array<dd, kSpougeA>& spouge_coeffs() {
  static const std::array<dd, kSpougeA> coeffs = [] {
    std::array<dd, kSpougeA> c{};
    c[0] = kDdSqrt2Pi;
    dd factorial{1.0, 0.0};  // (k-1)!
    for (int k = 1; k < kSpougeA; ++k) {
      if (k > 1) factorial = dd_mul(factorial, static_cast<double>(k - 1));
      double ak = static_cast<double>(kSpougeA - k);
      dd pw = dd_pow(dd{ak, 0.0}, dd{k - 0.5, 0.0});
      dd ex = dd_exp(dd{ak, 0.0});
      dd v = dd_div(dd_mul(pw, ex), factorial);
      c[k] = (k % 2 == 1) ? v : dd_neg(v);
    }
    return c;
  }();
  return coeffs;
}

// Gamma(z+1) for z.hi > -0.5.
dd spouge_gamma1p(dd z) {
  const auto& c = spouge_coeffs();
  dd base = dd_add(z, static_cast<double>(kSpougeA));
  dd sum = c[0];
  for (int k = 1; k < kSpougeA; ++k) {
    sum = dd_add(sum, dd_div(c[k], dd_add(z, static_cast<double>(k))));
  }
  dd power = dd_pow(base, dd_add(z, 0.5));
  return dd_mul(dd_mul(power, dd_exp(dd_neg(base))), sum);
}

// Gamma(x) for a dd argument with x.hi > -20, x not ~integer <= 0.
// Negative arguments are lifted with Gamma(x) = Gamma(x+n)/(x(x+1)...(x+n-1)).
dd gamma_dd(dd x) {
  dd shift{1.0, 0.0};
  while (x.hi < 0.5) {
    shift = dd_mul(shift, x);
    x = dd_add(x, 1.0);
  }
  dd g = spouge_gamma1p(dd_sub(x, 1.0));
  return dd_div(g, shift);
}

// ---------------------------------------------------------------------------
// Kummer M series, dd and plain-double flavours. Parameters are carried as dd
// so that a-b+1 style derived parameters keep their full precision.
// ---------------------------------------------------------------------------

dd kummer_series_dd(dd a, dd b, double s, bool* converged) {
  dd term{1.0, 0.0};
  dd sum{1.0, 0.0};
  double peak = 1.0;
  for (int k = 0; k < kKummerTermCap; ++k) {
    dd num = dd_mul(dd_add(a, static_cast<double>(k)), s);
    dd den = dd_mul(dd_add(b, static_cast<double>(k)), static_cast<double>(k + 1));
    term = dd_div(dd_mul(term, num), den);
    sum = dd_add(sum, term);
    double mag = std::fabs(term.hi);
    peak = std::max(peak, mag);
    if (mag <= kDdEps * std::max(peak, std::fabs(sum.hi))) {
      *converged = true;
      return sum;
    }
  }
  *converged = false;
  return sum;
}

double kummer_series_double(double a, double b, double s, bool* converged) {
  double term = 1.0, sum = 1.0, peak = 1.0;
  for (int k = 0; k < kKummerTermCap; ++k) {
    term *= (a + k) * s / ((b + k) * (k + 1));
    sum += term;
    double mag = std::fabs(term);
    peak = std::max(peak, mag);
    if (mag <= 1e-17 * std::max(peak, std::fabs(sum))) {
      *converged = true;
      return sum;
    }
  }
  *converged = false;
  return sum;
}

// s^{p} in dd. The exponent must be carried exactly as handed in (1-b for
// the double b): the e^s-sized cancellation against the other connection term
// amplifies even a last-bit exponent substitution to an O(1) error, so no
// "nicer rational" shortcut is admissible here.
dd dd_pow_of(double s, dd p) { return dd_pow(dd{s, 0.0}, p); }

// ---------------------------------------------------------------------------
// Tricomi U routes.
// ---------------------------------------------------------------------------

// Gamma coefficients of the connection formula depend only on (a,b); the hot
// paths evaluate U at a handful of parameter pairs, so cache per thread.
struct ConnCoefDD {
  dd one_m_b, a1mb, two_m_b, coef1, coef2;
};

const ConnCoefDD& conn_coef_dd(double a, double b) {
  thread_local std::deque<std::pair<std::pair<double, double>, ConnCoefDD>> cache;
  for (const auto& e : cache) {
    if (e.first.first == a && e.first.second == b) return e.second;
  }
  ConnCoefDD c;
  c.one_m_b = two_sum(1.0, -b);
  c.a1mb = dd_add(c.one_m_b, a);
  c.two_m_b = two_sum(2.0, -b);
  c.coef1 = dd{0.0, 0.0};
  if (!is_nonpositive_integer(c.a1mb.hi) || std::fabs(c.a1mb.lo) > 0.0) {
    c.coef1 = dd_div(gamma_dd(c.one_m_b), gamma_dd(c.a1mb));
  }
  c.coef2 = dd{0.0, 0.0};
  if (a != 0.0) {
    c.coef2 = dd_div(gamma_dd(two_sum(b, -1.0)), gamma_dd(dd{a, 0.0}));
  }
  if (cache.size() > 64) cache.clear();  // degenerate caller; stay bounded
  cache.emplace_back(std::make_pair(a, b), c);
  return cache.back().second;
}

struct ConnCoefD {
  double coef1, coef2;
};

const ConnCoefD& conn_coef_double(double a, double b) {
  thread_local std::deque<std::pair<std::pair<double, double>, ConnCoefD>> cache;
  for (const auto& e : cache) {
    if (e.first.first == a && e.first.second == b) return e.second;
  }
  ConnCoefD c;
  c.coef1 = is_nonpositive_integer(a + 1.0 - b)
                ? 0.0
                : std::tgamma(1.0 - b) / std::tgamma(a + 1.0 - b);
  c.coef2 = (a != 0.0) ? std::tgamma(b - 1.0) / std::tgamma(a) : 0.0;
  if (cache.size() > 64) cache.clear();
  cache.emplace_back(std::make_pair(a, b), c);
  return cache.back().second;
}

// Connection formula in dd; requires a >= 0, b in (0,2) non-integer, s > 0.
double u_connection_dd(double a, double b, double s, double* est_rel_err) {
  const ConnCoefDD& c = conn_coef_dd(a, b);

  bool ok1 = true, ok2 = true;
  dd m1 = kummer_series_dd(dd{a, 0.0}, dd{b, 0.0}, s, &ok1);
  dd m2 = kummer_series_dd(c.a1mb, c.two_m_b, s, &ok2);
  if (!ok1 || !ok2) {
    throw std::runtime_error("tricomi_u: Kummer series failed to converge");
  }

  dd t1 = dd_mul(c.coef1, m1);
  dd t2 = dd_mul(dd_mul(c.coef2, dd_pow_of(s, c.one_m_b)), m2);
  dd u = dd_add(t1, t2);
  double cancel = (std::fabs(t1.hi) + std::fabs(t2.hi)) /
                  std::max(std::fabs(u.hi), std::numeric_limits<double>::min());
  *est_rel_err = 100.0 * kDdEps * cancel;  // series-length rounding slack
  return u.hi + u.lo;
}

// Connection formula in plain double. Same structure, ~1e-16 * e^s error.
double u_connection_double(double a, double b, double s, double* est_rel_err) {
  const ConnCoefD& c = conn_coef_double(a, b);
  bool ok1 = true, ok2 = true;
  double t1 = c.coef1 * kummer_series_double(a, b, s, &ok1);
  double t2 = c.coef2 * std::pow(s, 1.0 - b) *
              kummer_series_double(a - b + 1.0, 2.0 - b, s, &ok2);
  if (!ok1 || !ok2) {
    throw std::runtime_error("tricomi_u: Kummer series failed to converge");
  }
  double u = t1 + t2;
  double cancel = (std::fabs(t1) + std::fabs(t2)) /
                  std::max(std::fabs(u), std::numeric_limits<double>::min());
  *est_rel_err = 2e-16 * cancel;
  return u;
}

// Divergent asymptotic series s^{-a} 2F0(a, a-b+1;; -1/s), truncated at the
// smallest term; the truncation error is bounded by that term.
double u_asymptotic(double a, double b, double s, double* est_rel_err) {
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 600; ++k) {
    double next = term * (a + k) * (a - b + 1.0 + k) / (-(k + 1.0) * s);
    if (std::fabs(next) >= std::fabs(term)) break;
    term = next;
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  *est_rel_err = std::fabs(term) / std::max(std::fabs(sum), 1e-300);
  return std::pow(s, -a) * sum;
}

double u_impl(double a, double b, double s, UPrecision prec, double* est_rel_err) {
  if (a == 0.0) {
    *est_rel_err = 0.0;
    return 1.0;  // U(0,b,s) = 1
  }
  if (a < 0.0) {
    // Downward recurrence in a:
    //   U(A-1,b,s) = (2A - b + s) U(A,b,s) - A(A-b+1) U(A+1,b,s),  A = a+1.
    double e1 = 0.0, e2 = 0.0;
    double A = a + 1.0;
    double u1 = u_impl(A, b, s, prec, &e1);
    double u2 = u_impl(A + 1.0, b, s, prec, &e2);
    *est_rel_err = std::max(e1, e2) * 4.0;
    return (2.0 * A - b + s) * u1 - A * (A - b + 1.0) * u2;
  }
  if (prec == UPrecision::full) {
    if (s >= kUCrossover) return u_asymptotic(a, b, s, est_rel_err);
    return u_connection_dd(a, b, s, est_rel_err);
  }
  if (s >= kUCrossoverFast) return u_asymptotic(a, b, s, est_rel_err);
  return u_connection_double(a, b, s, est_rel_err);
}

}  // namespace

double gamma_fn(double x) {
  if (is_nonpositive_integer(x)) {
    throw std::domain_error("gamma_fn: pole at non-positive integer");
  }
  return std::tgamma(x);
}

double kummer_m(double a, double b, double s) {
  if (is_nonpositive_integer(b)) {
    throw std::domain_error("kummer_m: b must not be a non-positive integer");
  }
  if (s < 0.0 || !std::isfinite(s)) {
    throw std::domain_error("kummer_m: requires finite s >= 0");
  }
  bool ok = true;
  dd v = kummer_series_dd(dd{a, 0.0}, dd{b, 0.0}, s, &ok);
  if (!ok) throw std::runtime_error("kummer_m: series exceeded the term cap");
  return v.hi + v.lo;
}

UEval tricomi_u_checked(double a, double b, double s, UPrecision prec) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::domain_error("tricomi_u: requires s > 0");
  }
  if (b == std::floor(b)) {
    throw std::domain_error("tricomi_u: integer b not supported");
  }
  if (!(b > 0.0 && b < 2.0)) {
    throw std::domain_error("tricomi_u: b must lie in (0,2)");
  }
  double est = 0.0;
  double v = u_impl(a, b, s, prec, &est);
  double warn_at = (prec == UPrecision::full) ? 1e-10 : 1e-6;
  return {v, est > warn_at};
}

double tricomi_u(double a, double b, double s) {
  return tricomi_u_checked(a, b, s).value;
}

double tricomi_u_connection_route(double a, double b, double s) {
  double est = 0.0;
  return u_connection_dd(a, b, s, &est);
}

double tricomi_u_asymptotic_route(double a, double b, double s) {
  double est = 0.0;
  return u_asymptotic(a, b, s, &est);
}

}  // namespace persistkit::specfun
