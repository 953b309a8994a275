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

#include "persistkit/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace persistkit::dist {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kLaplaceScale = 1.0 / std::sqrt(2.0);  // variance 2b^2 = 1

}  // namespace

IncrementDistribution make_rademacher() {
  IncrementDistribution d;
  d.kind = Kind::rademacher;
  d.moment_exponent = std::numeric_limits<double>::infinity();
  d.support = {-1.0, 1.0};
  d.probs = {0.5, 0.5};
  d.cumulative = {0.5, 1.0};
  d.aperiodic = false;  // span-2 lattice
  return d;
}

IncrementDistribution make_gaussian() {
  IncrementDistribution d;
  d.kind = Kind::gaussian;
  d.moment_exponent = std::numeric_limits<double>::infinity();
  return d;
}

IncrementDistribution make_uniform() {
  IncrementDistribution d;
  d.kind = Kind::uniform;
  d.moment_exponent = std::numeric_limits<double>::infinity();
  return d;
}

IncrementDistribution make_laplace() {
  IncrementDistribution d;
  d.kind = Kind::laplace;
  d.moment_exponent = std::numeric_limits<double>::infinity();
  return d;
}

IncrementDistribution make_lattice(const std::vector<long long>& support,
                                   const std::vector<double>& probs) {
  if (support.empty() || support.size() != probs.size()) {
    throw std::invalid_argument("lattice: support/probs size mismatch");
  }
  double total = 0.0, mean = 0.0, second = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!(probs[i] >= 0.0)) throw std::invalid_argument("lattice: negative probability");
    total += probs[i];
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("lattice: probabilities must sum to 1");
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    mean += support[i] * probs[i];
    second += static_cast<double>(support[i]) * support[i] * probs[i];
  }
  if (std::fabs(mean) > 1e-9 || std::fabs(second - mean * mean - 1.0) > 1e-9) {
    throw std::invalid_argument("lattice: requires mean 0 and variance 1");
  }

  IncrementDistribution d;
  d.kind = Kind::lattice;
  d.moment_exponent = std::numeric_limits<double>::infinity();
  d.support.assign(support.begin(), support.end());
  d.probs = probs;
  d.cumulative.resize(probs.size());
  std::partial_sum(probs.begin(), probs.end(), d.cumulative.begin());
  d.cumulative.back() = 1.0;
  long long g = 0;
  for (std::size_t i = 1; i < support.size(); ++i) {
    g = std::gcd(g, support[i] - support[0]);
  }
  d.aperiodic = (g == 1);
  return d;
}

IncrementDistribution lattice_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  if (!j.contains("support") || !j.contains("probs")) {
    throw std::invalid_argument("lattice json: needs \"support\" and \"probs\"");
  }
  std::vector<long long> support;
  for (const auto& v : j["support"]) {
    if (!v.is_number_integer()) {
      throw std::invalid_argument("lattice json: support must be integers");
    }
    support.push_back(v.get<long long>());
  }
  std::vector<double> probs = j["probs"].get<std::vector<double>>();
  return make_lattice(support, probs);
}

IncrementDistribution from_name(const std::string& name) {
  if (name == "rademacher") return make_rademacher();
  if (name == "gaussian") return make_gaussian();
  if (name == "uniform") return make_uniform();
  if (name == "laplace") return make_laplace();
  if (name.rfind("lattice:", 0) == 0) {
    std::string path = name.substr(8);
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::invalid_argument("lattice: cannot open " + path);
    std::string text;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
    std::fclose(f);
    return lattice_from_json(text);
  }
  throw std::invalid_argument("unknown distribution: " + name);
}

std::string kind_name(const IncrementDistribution& d) {
  switch (d.kind) {
    case Kind::rademacher: return "rademacher";
    case Kind::gaussian: return "gaussian";
    case Kind::uniform: return "uniform";
    case Kind::laplace: return "laplace";
    case Kind::lattice: return "lattice";
  }
  return "?";
}

std::vector<std::pair<double, double>> atoms(const IncrementDistribution& d) {
  if (!has_finite_support(d)) {
    throw std::logic_error("atoms: distribution has no finite support");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(d.support.size());
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    out.emplace_back(d.support[i], d.probs[i]);
  }
  return out;
}

double sample_increment(const IncrementDistribution& d, rng::Philox& gen) {
  switch (d.kind) {
    case Kind::rademacher:
      return (gen.next_u32() & 1u) ? 1.0 : -1.0;
    case Kind::gaussian:
      return gen.next_gaussian();
    case Kind::uniform:
      return kSqrt3 * (2.0 * gen.next_double() - 1.0);
    case Kind::laplace: {
      double sign = (gen.next_u32() & 1u) ? 1.0 : -1.0;
      return sign * kLaplaceScale * -std::log(gen.next_double_pos());
    }
    case Kind::lattice: {
      double u = gen.next_double();
      auto it = std::lower_bound(d.cumulative.begin(), d.cumulative.end(), u);
      if (it == d.cumulative.end()) --it;
      return d.support[static_cast<std::size_t>(it - d.cumulative.begin())];
    }
  }
  return 0.0;
}

}  // namespace persistkit::dist
