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

// Fast residual suites behind `persistkit verify`: library-level identities
// and invariants that need no external oracle and finish in seconds.

#pragma once

#include <string>
#include <vector>

namespace persistkit::verify {

struct Check {
  std::string name;
  double observed = 0.0;  // residual or statistic
  double bound = 0.0;     // pass iff observed <= bound
  bool pass = false;
};

struct Suite {
  std::string name;
  std::vector<Check> checks;
  bool pass = true;
};

std::vector<std::string> suite_names();  // specfun, harmonic, diffusion, rng

// Throws std::invalid_argument for an unknown suite name.
Suite run_suite(const std::string& name);

}  // namespace persistkit::verify
