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

#ifndef UPSPEC_HARNESS_CONFIG_HPP_
#define UPSPEC_HARNESS_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "upspec/harness/generators.hpp"
#include "upspec/upsamplers.hpp"

namespace upspec::harness {

enum class Command { kAnalyze, kCompare, kContribution, kFit, kSweep, kErrorspec };

std::string_view to_string(Command command);
Command parse_command(std::string_view name);

enum class OutputFormat { kCsv, kJson, kPgm, kPpm };

std::string_view to_string(OutputFormat format);
// Comma-separated list, e.g. "csv,json,pgm".
std::set<OutputFormat> parse_formats(std::string_view list);

// Operator names accepted by --op, in canonical order.
inline constexpr std::string_view kOperatorNames[] = {
    "bed_of_nails", "nearest", "linear", "pixel_shuffle", "transposed_conv", "fourier_pad"};

enum class Perturbation { kNone, kPixel, kCosine };

struct ExperimentConfig {
  Command command = Command::kAnalyze;

  std::vector<std::string> operators{"bed_of_nails"};
  int stride = 2;  // the upsampling factor r and the kernel stride
  std::size_t kernel_size = 3;
  std::optional<std::size_t> parallel_small;
  // Explicit transposed-conv weights; empty means the closed-form fit.
  std::vector<double> weights;
  BoundaryMode boundary = BoundaryMode::kPeriodic;

  GeneratorSpec signal;

  // fit / sweep
  std::vector<std::size_t> sweep_sizes{2, 3, 7, 11, 15, 32};
  bool gradient_descent = false;
  std::optional<double> learning_rate;
  int max_iter = 100000;
  double tol = 1e-12;
  std::size_t corpus_size = 0;  // >0 switches to the corpus objective

  // errorspec: two Netpbm inputs, or the generated signal against a copy
  // with the given perturbation (or against signal_b).
  std::optional<std::filesystem::path> input_a;
  std::optional<std::filesystem::path> input_b;
  std::optional<GeneratorSpec> signal_b;
  Perturbation perturbation = Perturbation::kNone;
  double perturb_amp = 1.0;
  double perturb_k = 1.0;  // cosine perturbation, cycles along rows
  double perturb_k2 = 0.0;  // and along columns
  bool magnitude_mean = false;
  double log_floor = 1e-12;

  std::filesystem::path out_dir = ".";
  std::set<OutputFormat> formats{OutputFormat::kCsv, OutputFormat::kJson, OutputFormat::kPgm};

  bool wants(OutputFormat f) const { return formats.count(f) != 0; }

  // Throws InvalidInput.
  void validate() const;

  // Canonical form with sorted keys. out_dir is left out so that the same
  // experiment written to two places hashes identically.
  nlohmann::json to_json() const;
  // FNV-1a 64 of to_json().dump(), as 16 lowercase hex digits.
  std::string hash() const;
};

nlohmann::json to_json(const GeneratorSpec& spec);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace upspec::harness

#endif  // UPSPEC_HARNESS_CONFIG_HPP_
