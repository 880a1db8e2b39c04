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

// Benchmark of the OpenMP restart batches against the serial reference
// path. Both paths reduce by index, so the values must agree exactly; the
// benchmark reports wall time and verifies that equality.

#include <chrono>
#include <cstdio>
#include <vector>

#include "renyicap/capacity.hpp"
#include "renyicap/channels.hpp"
#include "renyicap/converse.hpp"
#include "renyicap/divergences.hpp"
#include "renyicap/parallel.hpp"
#include "renyicap/rng.hpp"

using namespace renyicap;

namespace {

double wall_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Workload {
  const char* name;
  double (*run)(std::uint64_t);
};

double radius_workload(std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.restarts = 32;
  cfg.seed = seed;
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    const KrausChannel ch = random_channel(2, 2, 2, derive_seed(seed, i));
    acc += info_radius(ch, 1.5, cfg).value;
  }
  return acc;
}

double norm_workload(std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.restarts = 64;
  cfg.seed = seed;
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    const KrausChannel a = random_channel(2, 2, 2, derive_seed(seed, 10 + i));
    const KrausChannel b = random_channel(2, 2, 2, derive_seed(seed, 20 + i));
    acc += max_output_alpha_norm(a.tensor(b).compressed(), 2.0, cfg).value;
  }
  return acc;
}

double simulate_workload(std::uint64_t seed) {
  const Ensemble basis({0.5, 0.5}, {DensityMatrix::basis_state(2, 0),
                                    DensityMatrix::basis_state(2, 1)});
  const CodeSpec spec(4, 1.2, basis, seed);
  const SimulationResult res =
      simulate_code(pinching(Matrix::Identity(2, 2)), spec, 64);
  return res.p_succ_mean;
}

}  // namespace

int main() {
  const Workload workloads[] = {
      {"info_radius x4 (32 restarts)", radius_workload},
      {"joint output norm x4 (64 restarts)", norm_workload},
      {"codebook simulation (64 codebooks)", simulate_workload},
  };

  std::printf("threads available: %d\n\n", par::max_threads());
  std::printf("%-38s %12s %12s %9s %s\n", "workload", "serial [s]", "openmp [s]",
              "speedup", "match");

  for (const Workload& w : workloads) {
    par::execution_mode() = par::Mode::serial;
    const double t0 = wall_seconds();
    const double serial_value = w.run(7);
    const double t1 = wall_seconds();

    par::execution_mode() = par::Mode::openmp;
    const double t2 = wall_seconds();
    const double parallel_value = w.run(7);
    const double t3 = wall_seconds();

    const bool match = serial_value == parallel_value;
    std::printf("%-38s %12.3f %12.3f %8.2fx %s\n", w.name, t1 - t0, t3 - t2,
                (t1 - t0) / std::max(t3 - t2, 1e-9), match ? "exact" : "DIFFER");
    if (!match) {
      std::printf("  serial %.17g vs openmp %.17g\n", serial_value,
                  parallel_value);
      return 1;
    }
  }
  par::execution_mode() = par::Mode::openmp;
  return 0;
}
