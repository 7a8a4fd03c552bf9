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

#ifndef UPSPEC_HARNESS_RUNNER_HPP_
#define UPSPEC_HARNESS_RUNNER_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "upspec/harness/config.hpp"
#include "upspec/harness/records.hpp"
#include "upspec/kernel_fit.hpp"
#include "upspec/signal.hpp"
#include "upspec/upsamplers.hpp"

namespace upspec::harness {

struct RunResult {
  std::vector<std::filesystem::path> files;  // in write order
  nlohmann::json summary;                    // contents of the JSON artifact
};

/// Validates cfg, creates out_dir and dispatches on cfg.command.
/// Throws InvalidInput (usage), IoError, or NumericalError.
RunResult run(const ExperimentConfig& cfg);

RunResult run_analyze(const ExperimentConfig& cfg);
RunResult run_compare(const ExperimentConfig& cfg);
RunResult run_contribution(const ExperimentConfig& cfg);
RunResult run_fit(const ExperimentConfig& cfg);
RunResult run_sweep(const ExperimentConfig& cfg);
RunResult run_errorspec(const ExperimentConfig& cfg);

/// Explicit weights when given, otherwise the closed-form fit (with the
/// parallel branch when requested) for length-n inputs.
KernelSpec resolve_kernel(const ExperimentConfig& cfg, std::size_t n);

/// The r channels fed to pixel shuffle: x rotated by m * floor(N/r) (or by m
/// when N < r). Channel 0 is x itself.
std::vector<Signal> shuffle_channels(const Signal& x, UpsampleFactor r);
std::vector<Image> shuffle_channels2(const Image& x, UpsampleFactor r);

Signal apply_operator(std::string_view op, const Signal& x, UpsampleFactor r,
                      BoundaryMode boundary, const std::optional<KernelSpec>& kernel);
Image apply_operator2(std::string_view op, const Image& x, UpsampleFactor r,
                      BoundaryMode boundary, const std::optional<KernelSpec>& kernel);

/// One record per operator, sorted by alias_ratio ascending (stable).
std::vector<MetricsRecord> compare_metrics(const ExperimentConfig& cfg);

/// Bar chart of the kernel taps: one column per tap (a blank column, then
/// the parallel branch), 1 inside a bar and 0 elsewhere.
RealGrid kernel_bar_strip(const KernelSpec& kernel, std::size_t height = 32);

std::string utc_timestamp();

}  // namespace upspec::harness

#endif  // UPSPEC_HARNESS_RUNNER_HPP_
