// Copyright 2026 The renyicap developers
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

#pragma once

#include <cstddef>
#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace renyicap::par {

enum class Mode { serial, openmp };

/// Process-wide execution mode for restart batches and property corpora.
/// The serial path is the reference implementation: every parallel loop
/// writes results by index only, so both modes produce identical output.
inline Mode& execution_mode() {
  static Mode mode =
#ifdef _OPENMP
      Mode::openmp;
#else
      Mode::serial;
#endif
  return mode;
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Runs fn(i) for i in [0, n). fn must only write to state owned by index
/// i; reductions happen serially afterwards. Exceptions are captured and
/// the first one is rethrown after the loop joins.
template <typename F>
void for_each_index(std::size_t n, F&& fn, Mode mode = execution_mode()) {
#ifdef _OPENMP
  if (mode == Mode::openmp && n > 1) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#else
  (void)mode;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace renyicap::par
