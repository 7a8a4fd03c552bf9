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

#include "upspec/harness/generators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "upspec/dft.hpp"
#include "upspec/errors.hpp"

namespace upspec::harness {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct KindName {
  SignalKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {SignalKind::kCosine, "cosine"},
    {SignalKind::kCosineMixture, "cosine_mixture"},
    {SignalKind::kBandLimited, "band_limited"},
    {SignalKind::kWhiteNoise, "white_noise"},
    {SignalKind::kStep, "step"},
    {SignalKind::kCheckerboard, "checkerboard"},
    {SignalKind::kGaussianBlob, "gaussian_blob"},
    {SignalKind::kEdgeTexture, "edge_texture"},
    {SignalKind::kCosine2D, "cosine2d"},
    {SignalKind::kNoise2D, "noise2d"},
};

double cosine_sample(const CosineComponent& c, std::size_t j, std::size_t n) {
  return c.amp * std::cos(kTwoPi * c.k * static_cast<double>(j) / static_cast<double>(n) +
                          c.phase);
}

Signal band_limited(const GeneratorSpec& spec) {
  Rng rng(*spec.seed);
  const std::size_t n = spec.n;
  std::vector<Complex> coeffs(n, Complex(0.0, 0.0));
  coeffs[0] = Complex(rng.uniform(-1.0, 1.0) * static_cast<double>(n), 0.0);
  for (std::size_t k = 1; k <= spec.cutoff; ++k) {
    const double re = rng.uniform(-1.0, 1.0);
    const double im = rng.uniform(-1.0, 1.0);
    const Complex c = Complex(re, im) * (static_cast<double>(n) / 2.0);
    coeffs[k] = c;
    coeffs[n - k] = std::conj(c);
  }
  return idft(Spectrum{std::move(coeffs), SpectrumConvention::kUnshifted});
}

double plane_value(const GeneratorSpec& spec, std::size_t h, std::size_t w) {
  const double hh = static_cast<double>(h);
  const double ww = static_cast<double>(w);
  const double height = static_cast<double>(spec.height);
  const double width = static_cast<double>(spec.width);
  const CosineComponent& c = spec.components.front();
  switch (spec.kind) {
    case SignalKind::kCheckerboard: {
      const auto cell = static_cast<std::size_t>(std::max(1.0, c.k));
      return ((h / cell + w / cell) % 2 == 0) ? c.amp : 0.0;
    }
    case SignalKind::kGaussianBlob: {
      const double sigma = std::min(height, width) / 8.0;
      const double dh = hh - (height - 1) / 2.0;
      const double dw = ww - (width - 1) / 2.0;
      return c.amp * std::exp(-(dh * dh + dw * dw) / (2.0 * sigma * sigma));
    }
    case SignalKind::kEdgeTexture: {
      const double edge = (2 * w >= spec.width) ? 1.0 : 0.0;
      const double cycles = c.k > 0.0 ? c.k : 3.0;
      const double texture =
          0.25 * std::cos(kTwoPi * cycles * (hh / height + ww / width) + c.phase);
      return c.amp * (edge + texture);
    }
    case SignalKind::kCosine2D:
      return c.amp * std::cos(kTwoPi * (c.k * hh / height + spec.k2 * ww / width) + c.phase);
    default:
      throw InvalidInput("not a deterministic 2D kind");
  }
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::string_view to_string(SignalKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "unknown";
}

SignalKind parse_signal_kind(std::string_view name) {
  for (const auto& entry : kKindNames) {
    if (entry.name == name) return entry.kind;
  }
  throw InvalidInput("unknown signal kind '" + std::string(name) + "'");
}

bool is_2d(SignalKind kind) {
  switch (kind) {
    case SignalKind::kCheckerboard:
    case SignalKind::kGaussianBlob:
    case SignalKind::kEdgeTexture:
    case SignalKind::kCosine2D:
    case SignalKind::kNoise2D:
      return true;
    default:
      return false;
  }
}

bool is_random(SignalKind kind) {
  return kind == SignalKind::kBandLimited || kind == SignalKind::kWhiteNoise ||
         kind == SignalKind::kNoise2D;
}

void GeneratorSpec::validate() const {
  if (is_random(kind) && !seed) {
    throw InvalidInput(std::string(to_string(kind)) + " requires a seed");
  }
  if (components.empty()) throw InvalidInput("at least one cosine component is required");
  for (const auto& c : components) {
    if (!std::isfinite(c.k) || !std::isfinite(c.amp) || !std::isfinite(c.phase)) {
      throw InvalidInput("cosine component parameters must be finite");
    }
  }
  if (!std::isfinite(k2)) throw InvalidInput("k2 must be finite");
  if (is_2d(kind)) {
    if (height == 0 || width == 0 || channels == 0) {
      throw InvalidInput("image dimensions must be positive");
    }
  } else if (n == 0) {
    throw InvalidInput("signal length must be positive");
  }
  if (kind == SignalKind::kBandLimited && 2 * cutoff >= n) {
    throw InvalidInput("band-limited cutoff " + std::to_string(cutoff) +
                       " must be below N/2 for N=" + std::to_string(n));
  }
}

Signal generate_signal(const GeneratorSpec& spec) {
  spec.validate();
  if (is_2d(spec.kind)) throw InvalidInput("generate_signal called with a 2D kind");
  std::vector<double> out(spec.n, 0.0);
  switch (spec.kind) {
    case SignalKind::kCosine:
      for (std::size_t j = 0; j < spec.n; ++j) out[j] = cosine_sample(spec.components[0], j, spec.n);
      break;
    case SignalKind::kCosineMixture:
      for (const auto& c : spec.components) {
        for (std::size_t j = 0; j < spec.n; ++j) out[j] += cosine_sample(c, j, spec.n);
      }
      break;
    case SignalKind::kBandLimited:
      return band_limited(spec);
    case SignalKind::kWhiteNoise: {
      Rng rng(*spec.seed);
      for (auto& v : out) v = rng.uniform(-1.0, 1.0);
      break;
    }
    case SignalKind::kStep:
      for (std::size_t j = spec.n / 2; j < spec.n; ++j) {
        out[j] = spec.components[0].amp;
      }
      break;
    default:
      break;
  }
  return Signal(std::move(out));
}

Image generate_image(const GeneratorSpec& spec) {
  spec.validate();
  if (!is_2d(spec.kind)) throw InvalidInput("generate_image called with a 1D kind");
  Image out(spec.height, spec.width, spec.channels);
  if (spec.kind == SignalKind::kNoise2D) {
    Rng rng(*spec.seed);
    for (std::size_t c = 0; c < spec.channels; ++c) {
      for (std::size_t h = 0; h < spec.height; ++h) {
        for (std::size_t w = 0; w < spec.width; ++w) out.at(h, w, c) = rng.uniform(-1.0, 1.0);
      }
    }
    return out;
  }
  for (std::size_t h = 0; h < spec.height; ++h) {
    for (std::size_t w = 0; w < spec.width; ++w) {
      const double v = plane_value(spec, h, w);
      for (std::size_t c = 0; c < spec.channels; ++c) out.at(h, w, c) = v;
    }
  }
  return out;
}

}  // namespace upspec::harness
