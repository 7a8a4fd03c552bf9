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

#include "upspec/harness/config.hpp"

#include <cmath>
#include <cstdio>

#include "upspec/errors.hpp"

namespace upspec::harness {

namespace {

constexpr std::pair<Command, std::string_view> kCommandNames[] = {
    {Command::kAnalyze, "analyze"}, {Command::kCompare, "compare"},
    {Command::kContribution, "contribution"}, {Command::kFit, "fit"},
    {Command::kSweep, "sweep"}, {Command::kErrorspec, "errorspec"},
};

constexpr std::pair<OutputFormat, std::string_view> kFormatNames[] = {
    {OutputFormat::kCsv, "csv"},
    {OutputFormat::kJson, "json"},
    {OutputFormat::kPgm, "pgm"},
    {OutputFormat::kPpm, "ppm"},
};

std::string_view perturbation_name(Perturbation p) {
  switch (p) {
    case Perturbation::kPixel:
      return "pixel";
    case Perturbation::kCosine:
      return "cosine";
    default:
      return "none";
  }
}

bool known_operator(std::string_view name) {
  for (auto op : kOperatorNames) {
    if (op == name) return true;
  }
  return false;
}

}  // namespace

std::string_view to_string(Command command) {
  for (const auto& [c, name] : kCommandNames) {
    if (c == command) return name;
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (const auto& [c, n] : kCommandNames) {
    if (n == name) return c;
  }
  throw InvalidInput("unknown command '" + std::string(name) + "'");
}

std::string_view to_string(OutputFormat format) {
  for (const auto& [f, name] : kFormatNames) {
    if (f == format) return name;
  }
  return "unknown";
}

std::set<OutputFormat> parse_formats(std::string_view list) {
  std::set<OutputFormat> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    const std::string_view item = list.substr(start, comma - start);
    bool found = false;
    for (const auto& [f, name] : kFormatNames) {
      if (name == item) {
        out.insert(f);
        found = true;
      }
    }
    if (!found) throw InvalidInput("unknown output format '" + std::string(item) + "'");
    start = comma + 1;
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (formats.empty()) throw InvalidInput("at least one output format is required");
  if (command == Command::kContribution ? stride < 1 : stride < 2) {
    throw InvalidInput("stride " + std::to_string(stride) + " is out of range");
  }
  if (kernel_size == 0) throw InvalidInput("kernel size must be positive");
  if (parallel_small && (*parallel_small == 0 || *parallel_small > kernel_size)) {
    throw InvalidInput("parallel branch must have between 1 and K taps");
  }
  if (!weights.empty() && weights.size() != kernel_size) {
    throw InvalidInput("got " + std::to_string(weights.size()) + " weights for K=" +
                       std::to_string(kernel_size));
  }
  if (operators.empty()) throw InvalidInput("at least one operator is required");
  for (const auto& op : operators) {
    if (!known_operator(op)) throw InvalidInput("unknown operator '" + op + "'");
  }
  if (max_iter <= 0 || !(tol >= 0.0)) throw InvalidInput("invalid descent limits");
  if (learning_rate && !(*learning_rate > 0.0)) throw InvalidInput("learning rate must be positive");
  if (!(log_floor > 0.0)) throw InvalidInput("log floor must be positive");
  if (command == Command::kSweep && sweep_sizes.empty()) {
    throw InvalidInput("sweep needs at least one kernel size");
  }
  if (parallel_small && !weights.empty()) {
    throw InvalidInput("explicit weights cannot be combined with a parallel branch");
  }
  if (corpus_size > 0 && (!is_random(signal.kind) || is_2d(signal.kind))) {
    throw InvalidInput("corpus objective needs a seeded random 1D signal kind");
  }
  if (command == Command::kErrorspec) {
    if (input_a.has_value() != input_b.has_value()) {
      throw InvalidInput("errorspec needs both --input-a and --input-b");
    }
    if (!input_a) {
      if (!is_2d(signal.kind)) throw InvalidInput("errorspec needs a 2D signal kind");
      if (signal_b && !is_2d(signal_b->kind)) {
        throw InvalidInput("errorspec needs a 2D second signal kind");
      }
    }
  }
  if (command != Command::kErrorspec || !input_a) signal.validate();
  if (signal_b) signal_b->validate();
}

nlohmann::json to_json(const GeneratorSpec& spec) {
  nlohmann::json components = nlohmann::json::array();
  for (const auto& c : spec.components) {
    components.push_back({{"k", c.k}, {"amp", c.amp}, {"phase", c.phase}});
  }
  nlohmann::json j = {
      {"kind", std::string(to_string(spec.kind))},
      {"components", components},
      {"cutoff", spec.cutoff},
      {"seed", spec.seed ? nlohmann::json(*spec.seed) : nlohmann::json(nullptr)},
  };
  if (is_2d(spec.kind)) {
    j["height"] = spec.height;
    j["width"] = spec.width;
    j["channels"] = spec.channels;
    j["k2"] = spec.k2;
  } else {
    j["n"] = spec.n;
  }
  return j;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json fmt = nlohmann::json::array();
  for (auto f : formats) fmt.push_back(std::string(to_string(f)));
  nlohmann::json j = {
      {"command", std::string(to_string(command))},
      {"operators", operators},
      {"stride", stride},
      {"kernel_size", kernel_size},
      {"parallel_small",
       parallel_small ? nlohmann::json(*parallel_small) : nlohmann::json(nullptr)},
      {"weights", weights},
      {"boundary", boundary == BoundaryMode::kPeriodic ? "periodic" : "zero_pad"},
      {"signal", harness::to_json(signal)},
      {"formats", fmt},
  };
  switch (command) {
    case Command::kFit:
    case Command::kSweep:
      j["sweep_sizes"] = sweep_sizes;
      j["mode"] = gradient_descent ? "gd" : "closed";
      j["learning_rate"] = learning_rate ? nlohmann::json(*learning_rate) : nlohmann::json(nullptr);
      j["max_iter"] = max_iter;
      j["tol"] = tol;
      j["corpus_size"] = corpus_size;
      break;
    case Command::kErrorspec:
      j["input_a"] = input_a ? nlohmann::json(input_a->string()) : nlohmann::json(nullptr);
      j["input_b"] = input_b ? nlohmann::json(input_b->string()) : nlohmann::json(nullptr);
      j["signal_b"] = signal_b ? harness::to_json(*signal_b) : nlohmann::json(nullptr);
      j["perturbation"] = std::string(perturbation_name(perturbation));
      j["perturb_amp"] = perturb_amp;
      j["perturb_k"] = perturb_k;
      j["perturb_k2"] = perturb_k2;
      j["magnitude_mean"] = magnitude_mean;
      j["log_floor"] = log_floor;
      break;
    default:
      break;
  }
  return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string ExperimentConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(to_json().dump())));
  return buf;
}

}  // namespace upspec::harness
