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

#ifndef UPSPEC_UPSAMPLERS_HPP_
#define UPSPEC_UPSAMPLERS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "upspec/signal.hpp"

namespace upspec {

// Integer upsampling factor r >= 2.
class UpsampleFactor {
 public:
  explicit UpsampleFactor(int r);
  int value() const noexcept { return r_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(r_); }
  bool operator==(const UpsampleFactor&) const = default;

 private:
  int r_;
};

// How samples beyond the last input index are resolved. Exact spectral
// statements only hold for kPeriodic.
enum class BoundaryMode { kPeriodic, kZeroPad };

/// Transposed-convolution weights for 1D.
///
/// Tap j lands at offset j - anchor() relative to each zero-inserted input
/// sample. The anchor is always floor(K/2), so the offset range of a size-K
/// kernel contains that of every smaller one. The optional parallel branch
/// shares the stride, uses its own floor(size/2) anchor, and its output is
/// added to the main branch.
class KernelSpec {
 public:
  KernelSpec(std::vector<double> weights, int stride,
             std::optional<std::vector<double>> parallel_small = std::nullopt);

  std::size_t size() const noexcept { return weights_.size(); }
  int stride() const noexcept { return stride_; }
  std::size_t anchor() const noexcept { return weights_.size() / 2; }
  std::span<const double> weights() const noexcept { return weights_; }
  const std::optional<std::vector<double>>& parallel_small() const noexcept {
    return parallel_small_;
  }

 private:
  std::vector<double> weights_;
  int stride_;
  std::optional<std::vector<double>> parallel_small_;
};

/// Square K x K kernel (row-major) for transposed_conv2, with an optional
/// square parallel branch. Same anchoring rules as KernelSpec on both axes.
class KernelSpec2D {
 public:
  KernelSpec2D(std::size_t size, std::vector<double> weights, int stride,
               std::optional<std::size_t> small_size = std::nullopt,
               std::vector<double> small_weights = {});

  // w1 (x) w2, so that out[a][b] = rows[a] * cols[b].
  static KernelSpec2D outer(const KernelSpec& rows, const KernelSpec& cols);

  std::size_t size() const noexcept { return size_; }
  int stride() const noexcept { return stride_; }
  std::size_t anchor() const noexcept { return size_ / 2; }
  double at(std::size_t a, std::size_t b) const { return weights_[a * size_ + b]; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::optional<std::size_t> small_size() const noexcept { return small_size_; }
  double small_at(std::size_t a, std::size_t b) const {
    return small_weights_[a * *small_size_ + b];
  }

 private:
  std::size_t size_;
  std::vector<double> weights_;
  int stride_;
  std::optional<std::size_t> small_size_;
  std::vector<double> small_weights_;
};

// ---------------------------------------------------------------------------
// 1D operators. Every output has length r * N.

/// out[r*j] = x[j], zeros elsewhere.
Signal bed_of_nails(const Signal& x, UpsampleFactor r);

/// out[r*j + m] = x[j] for 0 <= m < r.
Signal nearest(const Signal& x, UpsampleFactor r);

/// out[r*j + m] = (1 - m/r) x[j] + (m/r) x[j+1]; x[N] is x[0] (periodic) or
/// 0 (zero-pad).
Signal linear(const Signal& x, UpsampleFactor r,
              BoundaryMode boundary = BoundaryMode::kPeriodic);

/// out[r*j + m] = channels[m][j]. Requires exactly r equal-length channels.
Signal pixel_shuffle(std::span<const Signal> channels, UpsampleFactor r);
std::vector<Signal> pixel_unshuffle(const Signal& x, UpsampleFactor r);

/// out[p] = sum_j w[j] z[p - j + c] with z = bed_of_nails(x, s) and
/// c = floor(K/2); the index wraps (periodic) or reads 0 outside [0, sN)
/// (zero-pad). A parallel branch is evaluated the same way and summed.
Signal transposed_conv(const Signal& x, const KernelSpec& kernel,
                       BoundaryMode boundary = BoundaryMode::kPeriodic);

/// Ideal band-limited upsampling: zero-pad the centered DFT to length rN and
/// transform back, scaled by r. For even N the Nyquist coefficient is split
/// equally between bins +N/2 and -N/2.
Signal fourier_pad_upsample(const Signal& x, UpsampleFactor r);

// ---------------------------------------------------------------------------
// 2D operators. Channels are processed independently.

Image bed_of_nails2(const Image& x, UpsampleFactor r);
Image nearest2(const Image& x, UpsampleFactor r);
// Bilinear: linear() along rows, then along columns.
Image linear2(const Image& x, UpsampleFactor r,
              BoundaryMode boundary = BoundaryMode::kPeriodic);
/// out[r*h + a, r*w + b] = channels[a*r + b][h, w]; requires r^2 images of
/// identical shape.
Image pixel_shuffle2(std::span<const Image> channels, UpsampleFactor r);
std::vector<Image> pixel_unshuffle2(const Image& x, UpsampleFactor r);
Image transposed_conv2(const Image& x, const KernelSpec2D& kernel,
                       BoundaryMode boundary = BoundaryMode::kPeriodic);
// fourier_pad_upsample along rows, then columns.
Image fourier_pad_upsample2(const Image& x, UpsampleFactor r);

// ---------------------------------------------------------------------------
// Linear single-input operator configurations.

enum class UpsamplerKind {
  kBedOfNails,
  kNearest,
  kLinear,
  kTransposedConv,
  kFourierPad,
};

std::string_view to_string(UpsamplerKind kind);
// Throws InvalidInput on an unknown name.
UpsamplerKind parse_upsampler_kind(std::string_view name);

struct Upsampler {
  UpsamplerKind kind;
  int factor;  // r, or the kernel stride for kTransposedConv
  BoundaryMode boundary = BoundaryMode::kPeriodic;
  std::optional<KernelSpec> kernel;

  static Upsampler bed_of_nails(UpsampleFactor r);
  static Upsampler nearest(UpsampleFactor r);
  static Upsampler linear(UpsampleFactor r,
                          BoundaryMode boundary = BoundaryMode::kPeriodic);
  static Upsampler transposed(KernelSpec kernel,
                              BoundaryMode boundary = BoundaryMode::kPeriodic);
  static Upsampler fourier_pad(UpsampleFactor r);
};

Signal apply(const Upsampler& op, const Signal& x);

/// rN x N matrix whose column j is op applied to the j-th standard basis
/// signal of length n.
Eigen::MatrixXd operator_matrix(const Upsampler& op, std::size_t n);

}  // namespace upspec

#endif  // UPSPEC_UPSAMPLERS_HPP_
