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

// Reproducible experiment runner; see the README for the frozen CSV columns
// and JSON keys. Exposed as a function so the test suite can drive it.

#pragma once

namespace persistkit::cli {

inline constexpr const char* kVersion = "0.1.0";

// argv-style entry point for the persistkit tool; returns the exit status.
int run(int argc, const char* const* argv);

}  // namespace persistkit::cli
