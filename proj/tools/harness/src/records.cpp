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

#include "upspec/harness/records.hpp"

#include <charconv>
#include <cmath>

namespace upspec::harness {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string csv_row(std::span<const std::string> fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += fields[i];
  }
  out += '\n';
  return out;
}

nlohmann::json json_number(double value) {
  return std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
}

std::string MetricsRecord::csv_header() {
  return "operator,kernel_size,stride,parallel_small,passband_energy,alias_energy,"
         "nyquist_energy,alias_ratio,replica_deviation,contribution_variance,"
         "psnr_vs_fourier_pad,config_hash\n";
}

std::string MetricsRecord::csv() const {
  const std::string fields[] = {
      op,
      std::to_string(kernel_size),
      std::to_string(stride),
      std::to_string(parallel_small),
      format_number(report.passband_energy),
      format_number(report.alias_energy),
      format_number(report.nyquist_energy),
      format_number(report.alias_ratio),
      report.replica_deviation ? format_number(*report.replica_deviation) : std::string(),
      format_number(contribution_variance),
      format_number(psnr_vs_fourier_pad),
      config_hash,
  };
  return csv_row(fields);
}

nlohmann::json MetricsRecord::json() const {
  return {
      {"operator", op},
      {"kernel_size", kernel_size},
      {"stride", stride},
      {"parallel_small", parallel_small},
      {"passband_energy", json_number(report.passband_energy)},
      {"alias_energy", json_number(report.alias_energy)},
      {"nyquist_energy", json_number(report.nyquist_energy)},
      {"alias_ratio", json_number(report.alias_ratio)},
      {"replica_deviation",
       report.replica_deviation ? json_number(*report.replica_deviation) : nlohmann::json(nullptr)},
      {"contribution_variance", json_number(contribution_variance)},
      {"psnr_vs_fourier_pad", json_number(psnr_vs_fourier_pad)},
      {"config_hash", config_hash},
  };
}

}  // namespace upspec::harness
