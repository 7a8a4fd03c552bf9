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

#ifndef UPSPEC_HARNESS_RECORDS_HPP_
#define UPSPEC_HARNESS_RECORDS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "upspec/alias.hpp"

namespace upspec::harness {

/// 12 significant digits, '.' separator, shortest of fixed/scientific as
/// chosen by std::to_chars. -0 prints as 0; non-finite values as inf, -inf,
/// nan.
std::string format_number(double value);

/// Comma-joined row with a trailing newline. Fields must not contain commas.
std::string csv_row(std::span<const std::string> fields);

/// JSON number, or null when not finite.
nlohmann::json json_number(double value);

/// One row of the alias-metrics table.
struct MetricsRecord {
  std::string op;
  std::size_t kernel_size = 0;  // 0 unless the operator is a transposed conv
  int stride = 0;
  std::size_t parallel_small = 0;
  AliasReport report;
  double contribution_variance = 0.0;
  double psnr_vs_fourier_pad = 0.0;  // +inf for fourier_pad itself
  std::string config_hash;

  static std::string csv_header();
  std::string csv() const;
  nlohmann::json json() const;
};

}  // namespace upspec::harness

#endif  // UPSPEC_HARNESS_RECORDS_HPP_
