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

#include "upspec/signal.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "upspec/errors.hpp"

namespace upspec {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InvalidInput(std::string(what) + ": non-finite sample at index " +
                         std::to_string(i));
    }
  }
}

}  // namespace

Signal::Signal(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw InvalidInput("signal: empty sample array");
  require_finite(samples_, "signal");
}

Signal::Signal(std::initializer_list<double> samples)
    : Signal(std::vector<double>(samples)) {}

Image::Image(std::size_t height, std::size_t width, std::size_t channels,
             std::vector<double> samples)
    : height_(height),
      width_(width),
      channels_(channels),
      samples_(std::move(samples)) {
  if (height_ == 0 || width_ == 0 || channels_ == 0) {
    throw InvalidInput("image: dimensions must be positive");
  }
  if (samples_.size() != height_ * width_ * channels_) {
    throw InvalidInput("image: sample count " + std::to_string(samples_.size()) +
                       " != H*W*C = " +
                       std::to_string(height_ * width_ * channels_));
  }
  require_finite(samples_, "image");
}

Image::Image(std::size_t height, std::size_t width, std::size_t channels)
    : Image(height, width, channels,
            std::vector<double>(height * width * channels, 0.0)) {}

Image Image::channel(std::size_t c) const {
  if (c >= channels_) throw InvalidInput("image: channel index out of range");
  Image out(height_, width_, 1);
  for (std::size_t h = 0; h < height_; ++h) {
    for (std::size_t w = 0; w < width_; ++w) out.at(h, w) = at(h, w, c);
  }
  return out;
}

Image Image::from_channels(std::span<const Image> planes) {
  if (planes.empty()) throw InvalidInput("image: no planes to stack");
  const std::size_t h0 = planes[0].height();
  const std::size_t w0 = planes[0].width();
  for (const Image& p : planes) {
    if (p.channels() != 1 || p.height() != h0 || p.width() != w0) {
      throw InvalidInput("image: planes must be single-channel and equal-shape");
    }
  }
  Image out(h0, w0, planes.size());
  for (std::size_t c = 0; c < planes.size(); ++c) {
    for (std::size_t h = 0; h < h0; ++h) {
      for (std::size_t w = 0; w < w0; ++w) out.at(h, w, c) = planes[c].at(h, w);
    }
  }
  return out;
}

}  // namespace upspec
