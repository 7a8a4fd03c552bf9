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

#include "upspec/dft.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "upspec/errors.hpp"

namespace upspec {

namespace {

using std::numbers::pi;

// Plain product; std::complex operator* goes through the C99 Annex G
// NaN-recovery path, which dominates the butterfly cost. Inputs here are
// always finite.
inline Complex mul(const Complex& a, const Complex& b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

// In-place iterative radix-2 transform; values.size() must be a power of two.
// Forward uses exp(-2 pi i jk/N), inverse exp(+2 pi i jk/N), both unscaled.
void fft_radix2(std::vector<Complex>& values, bool inverse) {
  const std::size_t n = values.size();
  if (n <= 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(values[i], values[j]);
  }

  // Twiddles evaluated directly, not by recurrence.
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<Complex> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    twiddle[k] = std::polar(1.0, sign * 2.0 * pi * static_cast<double>(k) /
                                     static_cast<double>(n));
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = values[start + k];
        const Complex v = mul(values[start + k + half], twiddle[k * step]);
        values[start + k] = u + v;
        values[start + k + half] = u - v;
      }
    }
  }
}

// Bluestein: jk = (j^2 + k^2 - (k-j)^2) / 2 turns the DFT into a circular
// convolution that is evaluated with power-of-two transforms.
void fft_bluestein(std::vector<Complex>& values, bool inverse) {
  const std::size_t n = values.size();
  const std::size_t m = std::bit_ceil(2 * n - 1);
  const double sign = inverse ? 1.0 : -1.0;

  std::vector<Complex> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle argument small.
    const std::size_t k2 = (k * k) % (2 * n);
    chirp[k] = std::polar(1.0, sign * pi * static_cast<double>(k2) /
                                   static_cast<double>(n));
  }

  std::vector<Complex> a(m, Complex{});
  std::vector<Complex> b(m, Complex{});
  for (std::size_t k = 0; k < n; ++k) a[k] = mul(values[k], chirp[k]);
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    b[k] = std::conj(chirp[k]);
    b[m - k] = std::conj(chirp[k]);
  }

  fft_radix2(a, false);
  fft_radix2(b, false);
  for (std::size_t k = 0; k < m; ++k) a[k] = mul(a[k], b[k]);
  fft_radix2(a, true);

  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) values[k] = mul(a[k] * scale, chirp[k]);
}

void transform(std::vector<Complex>& values, bool inverse) {
  const std::size_t n = values.size();
  if (n <= 1) return;
  if (std::has_single_bit(n)) {
    fft_radix2(values, inverse);
  } else {
    fft_bluestein(values, inverse);
  }
}

void require_nonempty(std::size_t n, const char* what) {
  if (n == 0) throw InvalidInput(std::string(what) + ": empty input");
}

// Applies the 1D transform along rows then columns of a row-major grid.
void transform2(std::vector<Complex>& grid, std::size_t height,
                std::size_t width, bool inverse) {
  std::vector<Complex> line(width);
  for (std::size_t h = 0; h < height; ++h) {
    std::copy_n(grid.begin() + static_cast<long>(h * width), width, line.begin());
    transform(line, inverse);
    std::copy(line.begin(), line.end(), grid.begin() + static_cast<long>(h * width));
  }
  line.resize(height);
  for (std::size_t w = 0; w < width; ++w) {
    for (std::size_t h = 0; h < height; ++h) line[h] = grid[h * width + w];
    transform(line, inverse);
    for (std::size_t h = 0; h < height; ++h) grid[h * width + w] = line[h];
  }
}

std::size_t rotate_index(std::size_t i, std::size_t shift, std::size_t n) {
  return (i + shift) % n;
}

}  // namespace

Spectrum dft(std::span<const Complex> values) {
  require_nonempty(values.size(), "dft");
  Spectrum out;
  out.coefficients.assign(values.begin(), values.end());
  transform(out.coefficients, false);
  return out;
}

Spectrum dft(const Signal& signal) {
  std::vector<Complex> values(signal.samples().begin(), signal.samples().end());
  return dft(values);
}

std::vector<Complex> idft_complex(std::span<const Complex> values) {
  require_nonempty(values.size(), "idft");
  std::vector<Complex> out(values.begin(), values.end());
  transform(out, true);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (Complex& v : out) v *= scale;
  return out;
}

Signal idft(const Spectrum& spectrum) {
  if (spectrum.convention != SpectrumConvention::kUnshifted) {
    throw InvalidInput("idft: spectrum must use the unshifted convention");
  }
  const std::vector<Complex> values = idft_complex(spectrum.coefficients);
  std::vector<double> real(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (std::abs(values[j].imag()) > kImaginaryResidueTolerance) {
      throw NonRealResult("idft: imaginary residue " +
                          std::to_string(values[j].imag()) + " at sample " +
                          std::to_string(j) +
                          " (spectrum is not conjugate symmetric)");
    }
    real[j] = values[j].real();
  }
  return Signal(std::move(real));
}

Spectrum2D dft2(std::span<const Complex> values, std::size_t height,
                std::size_t width) {
  require_nonempty(height * width, "dft2");
  if (values.size() != height * width) {
    throw InvalidInput("dft2: value count does not match height*width");
  }
  Spectrum2D out{height, width, {values.begin(), values.end()},
                 SpectrumConvention::kUnshifted};
  transform2(out.coefficients, height, width, false);
  return out;
}

std::vector<Spectrum2D> dft2(const Image& image) {
  std::vector<Spectrum2D> out;
  out.reserve(image.channels());
  std::vector<Complex> plane(image.height() * image.width());
  for (std::size_t c = 0; c < image.channels(); ++c) {
    for (std::size_t h = 0; h < image.height(); ++h) {
      for (std::size_t w = 0; w < image.width(); ++w) {
        plane[h * image.width() + w] = image.at(h, w, c);
      }
    }
    out.push_back(dft2(plane, image.height(), image.width()));
  }
  return out;
}

Spectrum2D idft2_complex(const Spectrum2D& spectrum) {
  if (spectrum.convention != SpectrumConvention::kUnshifted) {
    throw InvalidInput("idft2: spectrum must use the unshifted convention");
  }
  Spectrum2D out = spectrum;
  transform2(out.coefficients, out.height, out.width, true);
  const double scale = 1.0 / static_cast<double>(out.height * out.width);
  for (Complex& v : out.coefficients) v *= scale;
  return out;
}

Spectrum center_shift(const Spectrum& spectrum) {
  if (spectrum.convention != SpectrumConvention::kUnshifted) {
    throw InvalidInput("center_shift: spectrum is already centered");
  }
  const std::size_t n = spectrum.size();
  Spectrum out{std::vector<Complex>(n), SpectrumConvention::kCentered};
  const std::size_t shift = n - n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    out.coefficients[i] = spectrum.coefficients[rotate_index(i, shift, n)];
  }
  return out;
}

Spectrum inverse_center_shift(const Spectrum& spectrum) {
  if (spectrum.convention != SpectrumConvention::kCentered) {
    throw InvalidInput("inverse_center_shift: spectrum is not centered");
  }
  const std::size_t n = spectrum.size();
  Spectrum out{std::vector<Complex>(n), SpectrumConvention::kUnshifted};
  for (std::size_t k = 0; k < n; ++k) {
    out.coefficients[k] = spectrum.coefficients[rotate_index(k, n / 2, n)];
  }
  return out;
}

Spectrum2D center_shift(const Spectrum2D& spectrum) {
  if (spectrum.convention != SpectrumConvention::kUnshifted) {
    throw InvalidInput("center_shift: spectrum is already centered");
  }
  const std::size_t hh = spectrum.height;
  const std::size_t ww = spectrum.width;
  Spectrum2D out{hh, ww, std::vector<Complex>(hh * ww),
                 SpectrumConvention::kCentered};
  for (std::size_t i = 0; i < hh; ++i) {
    const std::size_t src_h = rotate_index(i, hh - hh / 2, hh);
    for (std::size_t j = 0; j < ww; ++j) {
      out.at(i, j) = spectrum.at(src_h, rotate_index(j, ww - ww / 2, ww));
    }
  }
  return out;
}

Spectrum2D inverse_center_shift(const Spectrum2D& spectrum) {
  if (spectrum.convention != SpectrumConvention::kCentered) {
    throw InvalidInput("inverse_center_shift: spectrum is not centered");
  }
  const std::size_t hh = spectrum.height;
  const std::size_t ww = spectrum.width;
  Spectrum2D out{hh, ww, std::vector<Complex>(hh * ww),
                 SpectrumConvention::kUnshifted};
  for (std::size_t i = 0; i < hh; ++i) {
    const std::size_t src_h = rotate_index(i, hh / 2, hh);
    for (std::size_t j = 0; j < ww; ++j) {
      out.at(i, j) = spectrum.at(src_h, rotate_index(j, ww / 2, ww));
    }
  }
  return out;
}

Signal log_magnitude(const Spectrum& spectrum, double floor) {
  if (!(floor > 0.0)) throw InvalidInput("log_magnitude: floor must be > 0");
  std::vector<double> out(spectrum.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = std::log10(std::abs(spectrum.coefficients[k]) + floor);
  }
  return Signal(std::move(out));
}

RealGrid log_magnitude(const Spectrum2D& spectrum, double floor) {
  if (!(floor > 0.0)) throw InvalidInput("log_magnitude: floor must be > 0");
  RealGrid out{spectrum.height, spectrum.width,
               std::vector<double>(spectrum.coefficients.size())};
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = std::log10(std::abs(spectrum.coefficients[i]) + floor);
  }
  return out;
}

std::vector<RadialBin> radial_average(const Spectrum2D& centered,
                                      std::size_t n_bins) {
  if (n_bins == 0) throw InvalidInput("radial_average: n_bins must be positive");
  if (centered.convention != SpectrumConvention::kCentered) {
    throw InvalidInput("radial_average: spectrum must be centered");
  }
  const auto radius_at = [&](std::size_t i, std::size_t j) {
    const double ky = static_cast<double>(i) - static_cast<double>(centered.height / 2);
    const double kx = static_cast<double>(j) - static_cast<double>(centered.width / 2);
    return std::hypot(ky, kx);
  };

  double r_max = 0.0;
  for (std::size_t i = 0; i < centered.height; ++i) {
    for (std::size_t j = 0; j < centered.width; ++j) {
      r_max = std::max(r_max, radius_at(i, j));
    }
  }

  std::vector<double> sums(n_bins, 0.0);
  std::vector<std::size_t> counts(n_bins, 0);
  for (std::size_t i = 0; i < centered.height; ++i) {
    for (std::size_t j = 0; j < centered.width; ++j) {
      std::size_t bin = 0;
      if (r_max > 0.0) {
        bin = static_cast<std::size_t>(radius_at(i, j) / r_max *
                                       static_cast<double>(n_bins));
        bin = std::min(bin, n_bins - 1);
      }
      sums[bin] += std::abs(centered.at(i, j));
      ++counts[bin];
    }
  }

  std::vector<RadialBin> out(n_bins);
  const double width = r_max / static_cast<double>(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    out[b].radius = (static_cast<double>(b) + 0.5) * width;
    out[b].count = counts[b];
    out[b].empty = counts[b] == 0;
    out[b].mean_magnitude =
        counts[b] == 0 ? 0.0 : sums[b] / static_cast<double>(counts[b]);
  }
  return out;
}

}  // namespace upspec
