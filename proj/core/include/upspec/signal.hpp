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

#ifndef UPSPEC_SIGNAL_HPP_
#define UPSPEC_SIGNAL_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace upspec {

using Complex = std::complex<double>;

// Real 1D sample array. Never empty, every sample finite.
class Signal {
 public:
  explicit Signal(std::vector<double> samples);
  Signal(std::initializer_list<double> samples);

  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const double> samples() const noexcept { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }
  const std::vector<double>& to_vector() const noexcept { return samples_; }

  bool operator==(const Signal&) const = default;

 private:
  std::vector<double> samples_;
};

// H x W x C real array stored interleaved: index (h * W + w) * C + c.
class Image {
 public:
  Image(std::size_t height, std::size_t width, std::size_t channels,
        std::vector<double> samples);
  // Zero-filled.
  Image(std::size_t height, std::size_t width, std::size_t channels = 1);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t channels() const noexcept { return channels_; }
  std::span<const double> samples() const noexcept { return samples_; }

  double at(std::size_t h, std::size_t w, std::size_t c = 0) const {
    return samples_[(h * width_ + w) * channels_ + c];
  }
  double& at(std::size_t h, std::size_t w, std::size_t c = 0) {
    return samples_[(h * width_ + w) * channels_ + c];
  }

  bool same_shape(const Image& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_ &&
           channels_ == other.channels_;
  }

  // Single-channel copy of channel c.
  Image channel(std::size_t c) const;
  // Inverse of channel(): stacks single-channel planes of equal shape.
  static Image from_channels(std::span<const Image> planes);

  bool operator==(const Image&) const = default;

 private:
  std::size_t height_;
  std::size_t width_;
  std::size_t channels_;
  std::vector<double> samples_;
};

// Row-major H x W real grid; the result type of 2D diagnostics.
struct RealGrid {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> values;

  double at(std::size_t h, std::size_t w) const { return values[h * width + w]; }
};

enum class SpectrumConvention {
  kUnshifted,  // index k = 0 .. len-1
  kCentered,   // index k_c = -floor(len/2) .. ceil(len/2)-1
};

struct Spectrum {
  std::vector<Complex> coefficients;
  SpectrumConvention convention = SpectrumConvention::kUnshifted;

  std::size_t size() const noexcept { return coefficients.size(); }
  const Complex& operator[](std::size_t k) const { return coefficients[k]; }
};

// Row-major 2D spectrum of one channel.
struct Spectrum2D {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<Complex> coefficients;
  SpectrumConvention convention = SpectrumConvention::kUnshifted;

  const Complex& at(std::size_t h, std::size_t w) const {
    return coefficients[h * width + w];
  }
  Complex& at(std::size_t h, std::size_t w) { return coefficients[h * width + w]; }
};

// Centered frequency index of unshifted bin k for a transform of length n.
inline long centered_index(std::size_t k, std::size_t n) {
  const long half = static_cast<long>(n / 2);
  const long kk = static_cast<long>(k);
  return kk >= static_cast<long>(n) - half ? kk - static_cast<long>(n) : kk;
}

}  // namespace upspec

#endif  // UPSPEC_SIGNAL_HPP_
