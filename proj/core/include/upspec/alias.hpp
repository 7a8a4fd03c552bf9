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

#ifndef UPSPEC_ALIAS_HPP_
#define UPSPEC_ALIAS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "upspec/signal.hpp"
#include "upspec/upsamplers.hpp"

namespace upspec {

/// Spectral energy split of one upsampled signal.
///
/// Bins are classified on the centered grid of the length-rN output:
/// passband |k_c| < N/2, Nyquist |k_c| == N/2 (even N only), alias
/// otherwise. Nyquist energy is reported on its own and is also included in
/// alias_energy, hence in alias_ratio = alias / (alias + passband).
struct AliasReport {
  double passband_energy = 0.0;
  double alias_energy = 0.0;
  double nyquist_energy = 0.0;
  double alias_ratio = 0.0;
  // Only set by analyze_upsampling(), which knows the low-rate input.
  std::optional<double> replica_deviation;
};

/// y has length r*N. Throws InvalidInput if r does not divide y.size().
AliasReport alias_energy(const Signal& y, UpsampleFactor r);
/// 2D analog summed over channels; a bin is passband when both axes are,
/// Nyquist when neither axis is alias and at least one sits on +-N/2.
AliasReport alias_energy2(const Image& y, UpsampleFactor r);

/// max_k |dft(y)[k] - dft(x)[k mod N]|; zero exactly when y is the
/// zero-inserted x.
double replica_deviation(const Signal& x, const Signal& y, UpsampleFactor r);
double replica_deviation2(const Image& x, const Image& y, UpsampleFactor r);

/// alias_energy(y, r) plus replica_deviation(x, y, r).
AliasReport analyze_upsampling(const Signal& x, const Signal& y, UpsampleFactor r);
AliasReport analyze_upsampling2(const Image& x, const Image& y, UpsampleFactor r);

// ---------------------------------------------------------------------------
// Interpolation filter responses. Frequencies ell are in cycles per input
// sample.

enum class FilterMethod { kBedOfNails, kNearest, kLinear };

std::string_view to_string(FilterMethod method);
// Throws InvalidInput for anything but bed_of_nails, nearest, linear.
FilterMethod parse_filter_method(std::string_view name);

struct ResponsePoint {
  double frequency = 0.0;
  double magnitude = 0.0;
};

/// Continuous-frequency response of the interpolation kernel, unit DC gain,
/// sampled at n_points evenly spaced ell in [0, r/2]: bed of nails 1,
/// nearest |sinc(ell)|, linear sinc^2(ell).
std::vector<ResponsePoint> filter_response(FilterMethod method, UpsampleFactor r,
                                           std::size_t n_points);

/// Magnitude response of the kernel sampled at output rate r, in closed form:
/// nearest |sin(pi ell) / sin(pi ell / r)|, linear
/// sin^2(pi ell) / (r sin^2(pi ell / r)), bed of nails 1. DC equals r for
/// nearest and linear. For linear this is r * sum_m sinc^2(ell - m r), the
/// continuous response plus its replicas at multiples of r.
double replicated_filter_response(FilterMethod method, UpsampleFactor r, double ell);

struct BinResponse {
  std::size_t bin = 0;
  double frequency = 0.0;  // bin / N, cycles per input sample
  double magnitude = 0.0;
};

/// |dft| of the operator applied to a length-n periodic unit impulse; one
/// entry per output bin (r*n of them). Requires n >= 4.
std::vector<BinResponse> empirical_filter_response(FilterMethod method,
                                                   UpsampleFactor r, std::size_t n);

// ---------------------------------------------------------------------------
// Checkerboard diagnostics.

struct ContributionMap {
  std::vector<std::int64_t> counts;
  int period = 1;  // the stride
  bool uniform = true;
  double variance = 0.0;
  // Closed-form prediction for the main kernel: stride divides its size.
  bool stride_divides_kernel = true;
};

/// Number of (input, tap) placements landing on each output position under
/// periodic placement p = s*i + j - c (mod out_len). Taps of a parallel
/// branch are counted too. out_len must be a positive multiple of the stride.
ContributionMap contribution_map(const KernelSpec& kernel, std::size_t out_len);

struct ContributionMap2D {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::int64_t> counts;  // row-major
  bool uniform = true;
  double variance = 0.0;
};

ContributionMap2D contribution_map2(const KernelSpec2D& kernel, std::size_t out_h,
                                    std::size_t out_w);

// ---------------------------------------------------------------------------
// Prediction error diagnostics.

enum class ErrorSpectrumMode {
  kComplexMean,    // |(1/C) sum_c F(pred_c - gt_c)|
  kMagnitudeMean,  // (1/C) sum_c |F(pred_c - gt_c)|
};

/// Centered log10(|S| + floor) of the channel-averaged error spectrum.
RealGrid error_spectrum(const Image& pred, const Image& gt,
                        ErrorSpectrumMode mode = ErrorSpectrumMode::kComplexMean,
                        double floor = 1e-12);

/// 10 log10(peak^2 / MSE); +infinity when the inputs are identical.
double psnr(const Image& pred, const Image& gt, double peak);
double psnr(const Signal& pred, const Signal& gt, double peak);

}  // namespace upspec

#endif  // UPSPEC_ALIAS_HPP_
