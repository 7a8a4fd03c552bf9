/*
 * Copyright 2026 The upspec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef UPSPEC_HARNESS_GENERATORS_HPP_
#define UPSPEC_HARNESS_GENERATORS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "upspec/signal.hpp"

namespace upspec::harness {

/// Seeded source for every random generator. The engine is std::mt19937_64
/// (its output sequence is fixed by the C++ standard), and a draw u maps to
/// [0, 1) as (u >> 11) * 2^-53, so corpora are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();                    // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)

 private:
  std::mt19937_64 engine_;
};

enum class SignalKind {
  kCosine,
  kCosineMixture,
  kBandLimited,
  kWhiteNoise,
  kStep,
  kCheckerboard,  // 2D
  kGaussianBlob,  // 2D
  kEdgeTexture,   // 2D
  kCosine2D,      // 2D
  kNoise2D,       // 2D
};

std::string_view to_string(SignalKind kind);
SignalKind parse_signal_kind(std::string_view name);
bool is_2d(SignalKind kind);
bool is_random(SignalKind kind);

struct CosineComponent {
  double k = 0.0;  // cycles per signal length
  double amp = 1.0;
  double phase = 0.0;
};

struct GeneratorSpec {
  SignalKind kind = SignalKind::kCosine;
  std::size_t n = 64;
  std::size_t height = 32;
  std::size_t width = 32;
  std::size_t channels = 1;
  std::optional<std::uint64_t> seed;
  std::size_t cutoff = 0;  // band-limited noise, highest centered bin kept
  // cosine: components[0]; cosine mixture: all of them; cosine2d: k along
  // rows, k2 along columns; checkerboard: k is the cell size.
  std::vector<CosineComponent> components{CosineComponent{}};
  double k2 = 0.0;

  // Throws InvalidInput.
  void validate() const;
};

/// 1D kinds only.
Signal generate_signal(const GeneratorSpec& spec);
/// 2D kinds only; random kinds draw each channel independently.
Image generate_image(const GeneratorSpec& spec);

}  // namespace upspec::harness

#endif  // UPSPEC_HARNESS_GENERATORS_HPP_
