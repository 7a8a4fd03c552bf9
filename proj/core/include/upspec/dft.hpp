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

#ifndef UPSPEC_DFT_HPP_
#define UPSPEC_DFT_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "upspec/signal.hpp"

namespace upspec {

inline constexpr double kDefaultLogFloor = 1e-12;
// Largest imaginary residue idft() silently discards.
inline constexpr double kImaginaryResidueTolerance = 1e-9;

/// Forward DFT, unnormalized: F_k = sum_j exp(-2 pi i jk/N) x_j.
///
/// Any length is supported. Powers of two go through an iterative radix-2
/// transform, other lengths through Bluestein's chirp-z reformulation.
Spectrum dft(const Signal& signal);
Spectrum dft(std::span<const Complex> values);

/// Inverse DFT carrying the 1/N factor. Throws NonRealResult when some
/// |Im x_j| exceeds kImaginaryResidueTolerance.
Signal idft(const Spectrum& spectrum);
/// Complex inverse without the realness check.
std::vector<Complex> idft_complex(std::span<const Complex> values);

/// Separable 2D DFT of every channel: rows first, then columns.
std::vector<Spectrum2D> dft2(const Image& image);
Spectrum2D dft2(std::span<const Complex> values, std::size_t height,
                std::size_t width);
/// 2D inverse without the realness check.
Spectrum2D idft2_complex(const Spectrum2D& spectrum);

/// Rotates an unshifted spectrum by floor(len/2) so that index 0 holds the
/// most negative frequency.
Spectrum center_shift(const Spectrum& spectrum);
Spectrum inverse_center_shift(const Spectrum& spectrum);
Spectrum2D center_shift(const Spectrum2D& spectrum);
Spectrum2D inverse_center_shift(const Spectrum2D& spectrum);

/// out[k] = log10(|F_k| + floor).
Signal log_magnitude(const Spectrum& spectrum, double floor = kDefaultLogFloor);
RealGrid log_magnitude(const Spectrum2D& spectrum,
                       double floor = kDefaultLogFloor);

struct RadialBin {
  double radius = 0.0;  // bin center
  double mean_magnitude = 0.0;
  std::size_t count = 0;
  bool empty = true;
};

/// Mean |F| per uniform radius bin over [0, r_max] of a centered 2D spectrum.
/// Radii are measured in integer frequency indices.
std::vector<RadialBin> radial_average(const Spectrum2D& centered,
                                      std::size_t n_bins);

}  // namespace upspec

#endif  // UPSPEC_DFT_HPP_
