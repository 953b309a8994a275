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

// Centered, unit-variance increment laws for the integrated walk.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "persistkit/rng.hpp"

namespace persistkit::dist {

enum class Kind { rademacher, gaussian, uniform, laplace, lattice };

struct IncrementDistribution {
  Kind kind = Kind::rademacher;
  // Declared finite moment order 2 + delta; infinity for the built-ins (all
  // of which have every moment).
  double moment_exponent = 0.0;
  // Lattice data (kind == lattice); support is integer-valued.
  std::vector<double> support;
  std::vector<double> probs;
  std::vector<double> cumulative;
  bool aperiodic = false;  // recorded flag: gcd of support gaps == 1
};

IncrementDistribution make_rademacher();
IncrementDistribution make_gaussian();
IncrementDistribution make_uniform();   // U[-sqrt(3), sqrt(3)]
IncrementDistribution make_laplace();   // scale 1/sqrt(2)

// Validates integer support, probabilities summing to 1, mean 0 and variance
// 1 (to 1e-9); throws std::invalid_argument otherwise.
IncrementDistribution make_lattice(const std::vector<long long>& support,
                                   const std::vector<double>& probs);

// Parses {"support": [ints], "probs": [reals]}.
IncrementDistribution lattice_from_json(const std::string& json_text);

// "rademacher" | "gaussian" | "uniform" | "laplace" | "lattice:<path.json>"
IncrementDistribution from_name(const std::string& name);

std::string kind_name(const IncrementDistribution& d);

inline bool has_finite_support(const IncrementDistribution& d) {
  return d.kind == Kind::rademacher || d.kind == Kind::lattice;
}

// Atoms of a finite-support law as (value, probability) pairs.
std::vector<std::pair<double, double>> atoms(const IncrementDistribution& d);

double sample_increment(const IncrementDistribution& d, rng::Philox& gen);

}  // namespace persistkit::dist
