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

#include "persistkit/mc.hpp"

#include <cstdlib>
#include <string>

namespace persistkit::mc {

int threads_from_env() {
  if (const char* env = std::getenv("PERSISTKIT_THREADS")) {
    try {
      int v = std::stoi(env);
      return v < 1 ? 1 : v;
    } catch (...) {
      // fall through to the default
    }
  }
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace persistkit::mc
