// Copyright 2026 The llmr Authors.
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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace llmr {

// log(sum_i exp(x_i)), stable for any finite input.
double log_sum_exp(std::span<const double> xs);

// Per-element log softmax; all probability arithmetic stays in log domain.
std::vector<double> log_softmax(std::span<const double> logits);

std::vector<double> softmax(std::span<const double> logits);

// KL(p || q) in nats from log-probability vectors.
double kl_from_log_probs(std::span<const double> log_p, std::span<const double> log_q);

bool all_finite(std::span<const double> xs);

// Deterministic pseudo-random source. mt19937_64 output is pinned by the
// standard, and uniform doubles are derived from raw bits rather than
// std::uniform_real_distribution, so identical seeds give identical streams
// on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(gen_() % span);
  }

  // Draw an index from a categorical distribution by CDF walk. The final
  // index absorbs any floating point shortfall, so the draw is always valid.
  int categorical(std::span<const double> probs) {
    double u = uniform();
    double acc = 0.0;
    for (std::size_t v = 0; v + 1 < probs.size(); ++v) {
      acc += probs[v];
      if (u < acc) return static_cast<int>(v);
    }
    return static_cast<int>(probs.size()) - 1;
  }

 private:
  std::mt19937_64 gen_;
};

// FNV-1a, used for config hashes and deterministic data splits.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ull);

// Stable sub-seed derivation for named random streams.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);

}  // namespace llmr
