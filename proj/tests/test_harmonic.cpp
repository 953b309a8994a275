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

#include "persistkit/harmonic.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "persistkit/verify.hpp"
#include "oracles.hpp"

using persistkit::harmonic::alpha;
using persistkit::harmonic::derivative_coefficient;
using persistkit::harmonic::h_eval;
using persistkit::harmonic::h_partial;
using persistkit::harmonic::h_yy;
using persistkit::harmonic::h_yyy;
using persistkit::harmonic::PlanePoint;

namespace {

double rel(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

const std::vector<double> kXs{0.5, 1.0, 10.0, 100.0};
const std::vector<double> kYs{-8.0, -2.0, -0.5, 0.5, 2.0, 8.0};

}  // namespace

TEST_CASE("alpha") {
  CHECK(alpha({0, 0}) == 0.0);
  CHECK(alpha({8, 1}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(alpha({1, -3}) == 3.0);
}

TEST_CASE("h zero extension and boundary values") {
  CHECK(h_eval({-1, 5}) == 0.0);
  CHECK(h_eval({0, 3}) == 0.0);
  CHECK(h_eval({-0.5, -2}) == 0.0);
  // continuous limit at y = 0: (9/2)^{1/6} G(1/3)/G(1/6) x^{1/6}
  CHECK(rel(h_eval({1, 0}), 0.6183916885668086) < 1e-12);
  CHECK(rel(h_eval({64, 0}), 2.0 * 0.6183916885668086) < 1e-12);
  CHECK_THROWS_AS(h_eval({std::nan(""), 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(h_eval({1.0, INFINITY}), std::invalid_argument);
}

TEST_CASE("h against the integral-oracle composition") {
  // recompose h from the oracle U on both branches
  const double c16 = std::pow(2.0 / 9.0, 1.0 / 6.0);
  for (double x : kXs) {
    for (double y : kYs) {
      double want;
      if (y > 0) {
        double s = 2 * y * y * y / (9 * x);
        want = c16 * y * std::pow(x, -1.0 / 6.0) *
               oracles::u_oracle(1.0 / 6.0, 4.0 / 3.0, s);
      } else {
        double r = -2 * y * y * y / (9 * x);
        want = -c16 / 6.0 * y * std::pow(x, -1.0 / 6.0) * std::exp(-r) *
               oracles::u_oracle(7.0 / 6.0, 4.0 / 3.0, r);
      }
      CHECK(rel(h_eval({x, y}), want) < 1e-8);
    }
  }
  // frozen spot values (oracle-derived)
  CHECK(rel(h_eval({1, 1}), 1.0625661010816168) < 1e-11);
  CHECK(rel(h_eval({2, -1}), 0.30261385974585085) < 1e-11);
}

TEST_CASE("scaling law") {
  for (double lam : {0.5, 2.0, 5.0}) {
    double root = std::sqrt(lam);
    for (double x : kXs) {
      for (double y : kYs) {
        double lhs = h_eval({lam * lam * lam * x, lam * y});
        double rhs = root * h_eval({x, y});
        CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::fabs(rhs));
      }
    }
  }
  // the (8x, 2y) -> sqrt(2) h example
  CHECK(rel(h_eval({8, 2}), std::sqrt(2.0) * h_eval({1, 1})) < 1e-12);
}

TEST_CASE("continuity across y = 0") {
  for (double x : {1e-2, 0.5, 1.0, 10.0, 1e3}) {
    double mid = h_eval({x, 0});
    double tiny = 1e-12 * std::cbrt(x);
    CHECK(rel(h_eval({x, tiny}), mid) < 1e-8);
    CHECK(rel(h_eval({x, -tiny}), mid) < 1e-8);
  }
}

TEST_CASE("positivity on the open half-plane") {
  for (double x : kXs) {
    for (double y : kYs) {
      CHECK(h_eval({x, y}) > 0.0);
    }
  }
}

TEST_CASE("harmonicity: generator form pinned by finite differences") {
  // y h_x + h_yy/2 = 0 with h_yy from a second difference of h itself.
  // The competing reading h_yy + y h_x / 2 = 0 must fail.
  double worst_generator = 0.0;
  double best_alternative = INFINITY;
  for (double x : {1e-2, 1.0, 10.0, 1e3}) {
    for (double y : {-30.0, -4.0, -1.0, 1.0, 4.0, 30.0}) {
      PlanePoint z{x, y};
      double step = std::max(1e-4 * alpha(z), 1e-6);
      if (step > 0.4 * std::fabs(y)) step = 0.4 * std::fabs(y);
      double hyy = oracles::fd2([&](double t) { return h_eval({x, t}); }, y, step);
      double yhx = y * h_partial(z, {1, 0});
      double resid = std::fabs(yhx + 0.5 * hyy);
      CHECK(resid <= 1e-6 * std::fabs(yhx) + 1e-8);
      worst_generator = std::max(worst_generator, resid / std::fabs(yhx));
      best_alternative =
          std::min(best_alternative, std::fabs(hyy + 0.5 * yhx) / std::fabs(yhx));
    }
  }
  CHECK(worst_generator < 1e-6);
  CHECK(best_alternative > 0.5);  // wrong form residual is O(1), not noise
}

TEST_CASE("derivative ladder vs finite-difference oracle") {
  CHECK(derivative_coefficient(0) == 1.0);
  CHECK(rel(derivative_coefficient(1), 1.0 / 36.0) < 1e-15);
  CHECK(rel(derivative_coefficient(2), -35.0 / 1296.0) < 1e-14);

  for (double x : kXs) {
    for (double y : kYs) {
      PlanePoint z{x, y};
      double sx = oracles::fd_step_x(z);
      double sy = oracles::fd_step_y(z);
      if (sy > 0.4 * std::fabs(y)) sy = 0.4 * std::fabs(y);

      CHECK(h_partial(z, {0, 0}) == h_eval(z));

      double hx_fd = oracles::fd1([&](double t) { return h_eval({t, y}); }, x, sx);
      CHECK(rel(h_partial(z, {1, 0}), hx_fd) < 1e-4);

      double hy_fd = oracles::fd1([&](double t) { return h_eval({x, t}); }, y, sy);
      CHECK(rel(h_partial(z, {0, 1}), hy_fd) < 1e-4);

      double hxx_fd = oracles::fd1(
          [&](double t) { return h_partial({t, y}, {1, 0}); }, x, sx);
      CHECK(rel(h_partial(z, {2, 0}), hxx_fd) < 1e-4);

      double hxy_fd = oracles::fd1(
          [&](double t) { return h_partial({t, y}, {0, 1}); }, x, sx);
      CHECK(rel(h_partial(z, {1, 1}), hxy_fd) < 1e-4);

      double hxxx_fd = oracles::fd1(
          [&](double t) { return h_partial({t, y}, {2, 0}); }, x, sx);
      CHECK(rel(h_partial(z, {3, 0}), hxxx_fd) < 1e-4);

      double hxxy_fd = oracles::fd1(
          [&](double t) { return h_partial({t, y}, {1, 1}); }, x, sx);
      CHECK(rel(h_partial(z, {2, 1}), hxxy_fd) < 1e-4);

      // PDE reductions against finite differences
      double hyy_fd = oracles::fd2([&](double t) { return h_eval({x, t}); }, y, sy);
      CHECK(rel(h_yy(z), hyy_fd) < 1e-4);
      double hyyy_fd = oracles::fd1(
          [&](double t) { return h_yy({x, t}); }, y, sy);
      CHECK(rel(h_yyy(z), hyyy_fd) < 1e-4);
    }
  }

  // named spec example at (1,1)
  {
    PlanePoint z{1, 1};
    double sx = oracles::fd_step_x(z);
    double hx_fd = oracles::fd1([&](double t) { return h_eval({t, 1.0}); }, 1.0, sx);
    CHECK(rel(h_partial(z, {1, 0}), hx_fd) < 1e-5);
  }
}

TEST_CASE("one-sided limits at y = 0 agree") {
  for (double x : {0.5, 1.0, 10.0}) {
    for (auto ord : {persistkit::harmonic::DerivativeOrder{1, 0},
                     persistkit::harmonic::DerivativeOrder{2, 0},
                     persistkit::harmonic::DerivativeOrder{0, 1},
                     persistkit::harmonic::DerivativeOrder{1, 1}}) {
      double mid = h_partial({x, 0}, ord);
      double tiny = 1e-10 * std::cbrt(x);
      CHECK(rel(h_partial({x, tiny}, ord), mid) < 1e-6);
      CHECK(rel(h_partial({x, -tiny}, ord), mid) < 1e-6);
    }
  }
}

TEST_CASE("h_partial domain errors") {
  CHECK_THROWS_AS(h_partial({-1, 1}, {1, 0}), std::domain_error);
  CHECK_THROWS_AS(h_partial({0, 1}, {1, 0}), std::domain_error);
  CHECK_THROWS_AS(h_partial({1, 1}, {1, 2}), std::domain_error);
  CHECK_THROWS_AS(h_partial({1, 1}, {-1, 0}), std::domain_error);
}

TEST_CASE("h band and bound triple") {
  auto zero = persistkit::harmonic::h_bound_check({0, 0});
  CHECK(zero.lower == 0.0);
  CHECK(zero.value == 0.0);
  CHECK(zero.upper == 0.0);

  for (double x = 1.0; x <= 100.0; x *= 2.1) {
    for (double y = 1.0; y <= 100.0; y *= 2.1) {
      auto t = persistkit::harmonic::h_bound_check({x, y});
      CHECK(t.lower <= t.value);
      CHECK(t.value <= t.upper);
    }
  }

  auto dead = persistkit::harmonic::h_bound_check({-3, 7});
  CHECK(dead.value == 0.0);
  CHECK(dead.value <= dead.upper);
}

TEST_CASE("verify suite: harmonic") {
  auto suite = persistkit::verify::run_suite("harmonic");
  for (const auto& c : suite.checks) {
    INFO(c.name, " observed ", c.observed, " bound ", c.bound);
    CHECK(c.pass);
  }
}
