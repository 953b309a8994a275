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

#include "persistkit/rng.hpp"

#include <cmath>

namespace persistkit::rng {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t* hi,
                      std::uint32_t* lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  *hi = static_cast<std::uint32_t>(p >> 32);
  *lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> c,
                                           std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mul_hi_lo(kPhiloxM0, c[0], &hi0, &lo0);
    mul_hi_lo(kPhiloxM1, c[2], &hi1, &lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kPhiloxW0;
    k[1] += kPhiloxW1;
  }
  return c;
}

void Philox::refill() {
  buf_ = philox4x32_10(ctr_, key_);
  pos_ = 0;
  // 128-bit counter increment
  if (++ctr_[0] == 0 && ++ctr_[1] == 0 && ++ctr_[2] == 0) ++ctr_[3];
}

// ---------------------------------------------------------------------------
// Normal deviates: 128-layer ziggurat (Marsaglia & Tsang construction) with
// 53-bit abscissa draws. Layer tables built once at first use.
// ---------------------------------------------------------------------------

namespace {

struct ZigguratTables {
  // x[0] is the virtual width of the base layer (strip + tail); x[1] = r.
  double x[129];
  double f[129];  // f[i] = exp(-x[i]^2/2), f[128] = 1
};

const ZigguratTables& ziggurat() {
  static const ZigguratTables t = [] {
    ZigguratTables z{};
    const double r = 3.442619855899;
    const double v = 9.91256303526217e-3;
    auto fx = [](double x) { return std::exp(-0.5 * x * x); };
    z.x[1] = r;
    z.x[0] = v / fx(r);
    for (int i = 2; i <= 127; ++i) {
      z.x[i] = std::sqrt(-2.0 * std::log(v / z.x[i - 1] + fx(z.x[i - 1])));
    }
    z.x[128] = 0.0;
    for (int i = 0; i <= 127; ++i) z.f[i] = fx(z.x[i]);
    z.f[128] = 1.0;
    return z;
  }();
  return t;
}

}  // namespace

double Philox::next_gaussian() {
  const ZigguratTables& z = ziggurat();
  for (;;) {
    std::uint64_t bits = next_u64();
    int layer = static_cast<int>(bits & 127u);
    double sign = (bits & 128u) ? -1.0 : 1.0;
    double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
    double x = u * z.x[layer];
    if (x < z.x[layer + 1]) return sign * x;
    if (layer == 0) {
      // Tail beyond r, Marsaglia's method.
      for (;;) {
        double xt = -std::log(next_double_pos()) / z.x[1];
        double yt = -std::log(next_double_pos());
        if (yt + yt > xt * xt) return sign * (z.x[1] + xt);
      }
    }
    double y = z.f[layer] + next_double() * (z.f[layer + 1] - z.f[layer]);
    if (y < std::exp(-0.5 * x * x)) return sign * x;
  }
}

}  // namespace persistkit::rng
