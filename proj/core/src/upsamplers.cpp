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

#include "upspec/upsamplers.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "upspec/dft.hpp"
#include "upspec/errors.hpp"

namespace upspec {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw InvalidInput(std::string(what) + ": weights must be finite");
    }
  }
}

long wrap(long p, long n) {
  const long m = p % n;
  return m < 0 ? m + n : m;
}

// Scatters every tap of `weights` around each zero-inserted input sample.
void scatter_taps(std::span<const double> x, std::span<const double> weights,
                  std::size_t stride, BoundaryMode boundary,
                  std::vector<double>& out) {
  const long out_len = static_cast<long>(out.size());
  const long anchor = static_cast<long>(weights.size() / 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    const long base = static_cast<long>(stride * i) - anchor;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      long p = base + static_cast<long>(j);
      if (boundary == BoundaryMode::kPeriodic) {
        p = wrap(p, out_len);
      } else if (p < 0 || p >= out_len) {
        continue;
      }
      out[static_cast<std::size_t>(p)] += weights[j] * x[i];
    }
  }
}

void scatter_taps2(const Image& x, std::span<const double> weights,
                   std::size_t size, std::size_t stride, BoundaryMode boundary,
                   Image& out) {
  const long out_h = static_cast<long>(out.height());
  const long out_w = static_cast<long>(out.width());
  const long anchor = static_cast<long>(size / 2);
  for (std::size_t c = 0; c < x.channels(); ++c) {
    for (std::size_t h = 0; h < x.height(); ++h) {
      for (std::size_t w = 0; w < x.width(); ++w) {
        const double v = x.at(h, w, c);
        if (v == 0.0) continue;
        const long base_p = static_cast<long>(stride * h) - anchor;
        const long base_q = static_cast<long>(stride * w) - anchor;
        for (std::size_t a = 0; a < size; ++a) {
          long p = base_p + static_cast<long>(a);
          if (boundary == BoundaryMode::kPeriodic) {
            p = wrap(p, out_h);
          } else if (p < 0 || p >= out_h) {
            continue;
          }
          for (std::size_t b = 0; b < size; ++b) {
            long q = base_q + static_cast<long>(b);
            if (boundary == BoundaryMode::kPeriodic) {
              q = wrap(q, out_w);
            } else if (q < 0 || q >= out_w) {
              continue;
            }
            out.at(static_cast<std::size_t>(p), static_cast<std::size_t>(q), c) +=
                weights[a * size + b] * v;
          }
        }
      }
    }
  }
}

// Applies a 1D operator to every row (along_rows) or column of every channel.
template <typename Op>
Image apply_separable(const Image& x, std::size_t r, bool along_rows, Op op) {
  const std::size_t out_h = along_rows ? x.height() : r * x.height();
  const std::size_t out_w = along_rows ? r * x.width() : x.width();
  Image out(out_h, out_w, x.channels());
  const std::size_t lines = along_rows ? x.height() : x.width();
  const std::size_t len = along_rows ? x.width() : x.height();
  std::vector<double> line(len);
  for (std::size_t c = 0; c < x.channels(); ++c) {
    for (std::size_t l = 0; l < lines; ++l) {
      for (std::size_t i = 0; i < len; ++i) {
        line[i] = along_rows ? x.at(l, i, c) : x.at(i, l, c);
      }
      const Signal up = op(Signal(line));
      for (std::size_t i = 0; i < up.size(); ++i) {
        if (along_rows) {
          out.at(l, i, c) = up[i];
        } else {
          out.at(i, l, c) = up[i];
        }
      }
    }
  }
  return out;
}

}  // namespace

UpsampleFactor::UpsampleFactor(int r) : r_(r) {
  if (r < 2) {
    throw InvalidInput("upsample factor must be >= 2, got " + std::to_string(r));
  }
}

KernelSpec::KernelSpec(std::vector<double> weights, int stride,
                       std::optional<std::vector<double>> parallel_small)
    : weights_(std::move(weights)),
      stride_(stride),
      parallel_small_(std::move(parallel_small)) {
  if (weights_.empty()) throw InvalidInput("kernel: size must be >= 1");
  if (stride_ < 1) {
    throw InvalidInput("kernel: stride must be >= 1, got " + std::to_string(stride_));
  }
  require_finite(weights_, "kernel");
  if (parallel_small_) {
    if (parallel_small_->empty() || parallel_small_->size() > weights_.size()) {
      throw InvalidInput("kernel: parallel branch size must be in [1, K]");
    }
    require_finite(*parallel_small_, "kernel");
  }
}

KernelSpec2D::KernelSpec2D(std::size_t size, std::vector<double> weights,
                           int stride, std::optional<std::size_t> small_size,
                           std::vector<double> small_weights)
    : size_(size),
      weights_(std::move(weights)),
      stride_(stride),
      small_size_(small_size),
      small_weights_(std::move(small_weights)) {
  if (size_ == 0) throw InvalidInput("kernel2d: size must be >= 1");
  if (weights_.size() != size_ * size_) {
    throw InvalidInput("kernel2d: expected K*K weights");
  }
  if (stride_ < 1) throw InvalidInput("kernel2d: stride must be >= 1");
  require_finite(weights_, "kernel2d");
  if (small_size_) {
    if (*small_size_ == 0 || *small_size_ > size_) {
      throw InvalidInput("kernel2d: parallel branch size must be in [1, K]");
    }
    if (small_weights_.size() != *small_size_ * *small_size_) {
      throw InvalidInput("kernel2d: expected S*S parallel weights");
    }
    require_finite(small_weights_, "kernel2d");
  } else if (!small_weights_.empty()) {
    throw InvalidInput("kernel2d: parallel weights given without a size");
  }
}

KernelSpec2D KernelSpec2D::outer(const KernelSpec& rows, const KernelSpec& cols) {
  if (rows.size() != cols.size() || rows.stride() != cols.stride()) {
    throw InvalidInput("kernel2d: outer product needs equal size and stride");
  }
  const std::size_t k = rows.size();
  std::vector<double> w(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) w[a * k + b] = rows.weights()[a] * cols.weights()[b];
  }
  std::optional<std::size_t> small_size;
  std::vector<double> small;
  if (rows.parallel_small() && cols.parallel_small()) {
    const auto& sr = *rows.parallel_small();
    const auto& sc = *cols.parallel_small();
    if (sr.size() != sc.size()) {
      throw InvalidInput("kernel2d: parallel branches differ in size");
    }
    small_size = sr.size();
    small.resize(sr.size() * sr.size());
    for (std::size_t a = 0; a < sr.size(); ++a) {
      for (std::size_t b = 0; b < sr.size(); ++b) small[a * sr.size() + b] = sr[a] * sc[b];
    }
  }
  return KernelSpec2D(k, std::move(w), rows.stride(), small_size, std::move(small));
}

Signal bed_of_nails(const Signal& x, UpsampleFactor r) {
  std::vector<double> out(r.size() * x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) out[r.size() * j] = x[j];
  return Signal(std::move(out));
}

Signal nearest(const Signal& x, UpsampleFactor r) {
  std::vector<double> out(r.size() * x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    std::fill_n(out.begin() + static_cast<long>(r.size() * j), r.size(), x[j]);
  }
  return Signal(std::move(out));
}

Signal linear(const Signal& x, UpsampleFactor r, BoundaryMode boundary) {
  const std::size_t n = x.size();
  const std::size_t rr = r.size();
  std::vector<double> out(rr * n);
  for (std::size_t j = 0; j < n; ++j) {
    double next = 0.0;
    if (j + 1 < n) {
      next = x[j + 1];
    } else if (boundary == BoundaryMode::kPeriodic) {
      next = x[0];
    }
    out[rr * j] = x[j];
    for (std::size_t m = 1; m < rr; ++m) {
      const double t = static_cast<double>(m) / static_cast<double>(rr);
      out[rr * j + m] = (1.0 - t) * x[j] + t * next;
    }
  }
  return Signal(std::move(out));
}

Signal pixel_shuffle(std::span<const Signal> channels, UpsampleFactor r) {
  if (channels.size() != r.size()) {
    throw InvalidInput("pixel_shuffle: expected " + std::to_string(r.size()) +
                       " channels, got " + std::to_string(channels.size()));
  }
  const std::size_t n = channels[0].size();
  for (const Signal& ch : channels) {
    if (ch.size() != n) throw InvalidInput("pixel_shuffle: channel lengths differ");
  }
  std::vector<double> out(r.size() * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < r.size(); ++m) out[r.size() * j + m] = channels[m][j];
  }
  return Signal(std::move(out));
}

std::vector<Signal> pixel_unshuffle(const Signal& x, UpsampleFactor r) {
  if (x.size() % r.size() != 0) {
    throw InvalidInput("pixel_unshuffle: length " + std::to_string(x.size()) +
                       " not divisible by " + std::to_string(r.value()));
  }
  const std::size_t n = x.size() / r.size();
  std::vector<Signal> out;
  out.reserve(r.size());
  for (std::size_t m = 0; m < r.size(); ++m) {
    std::vector<double> ch(n);
    for (std::size_t j = 0; j < n; ++j) ch[j] = x[r.size() * j + m];
    out.emplace_back(std::move(ch));
  }
  return out;
}

Signal transposed_conv(const Signal& x, const KernelSpec& kernel,
                       BoundaryMode boundary) {
  const std::size_t stride = static_cast<std::size_t>(kernel.stride());
  std::vector<double> out(stride * x.size(), 0.0);
  scatter_taps(x.samples(), kernel.weights(), stride, boundary, out);
  if (kernel.parallel_small()) {
    scatter_taps(x.samples(), *kernel.parallel_small(), stride, boundary, out);
  }
  return Signal(std::move(out));
}

Signal fourier_pad_upsample(const Signal& x, UpsampleFactor r) {
  const std::size_t n = x.size();
  const std::size_t big = r.size() * n;
  const Spectrum f = dft(x);
  Spectrum g{std::vector<Complex>(big, Complex{}), SpectrumConvention::kUnshifted};
  for (std::size_t k = 0; k < n; ++k) {
    if (n % 2 == 0 && k == n / 2) {
      g.coefficients[n / 2] += 0.5 * f[k];
      g.coefficients[big - n / 2] += 0.5 * f[k];
      continue;
    }
    const long kc = centered_index(k, n);
    g.coefficients[static_cast<std::size_t>(wrap(kc, static_cast<long>(big)))] = f[k];
  }
  const Signal back = idft(g);
  std::vector<double> out(back.samples().begin(), back.samples().end());
  for (double& v : out) v *= static_cast<double>(r.value());
  return Signal(std::move(out));
}

Image bed_of_nails2(const Image& x, UpsampleFactor r) {
  Image out(r.size() * x.height(), r.size() * x.width(), x.channels());
  for (std::size_t h = 0; h < x.height(); ++h) {
    for (std::size_t w = 0; w < x.width(); ++w) {
      for (std::size_t c = 0; c < x.channels(); ++c) {
        out.at(r.size() * h, r.size() * w, c) = x.at(h, w, c);
      }
    }
  }
  return out;
}

Image nearest2(const Image& x, UpsampleFactor r) {
  Image out(r.size() * x.height(), r.size() * x.width(), x.channels());
  for (std::size_t p = 0; p < out.height(); ++p) {
    for (std::size_t q = 0; q < out.width(); ++q) {
      for (std::size_t c = 0; c < x.channels(); ++c) {
        out.at(p, q, c) = x.at(p / r.size(), q / r.size(), c);
      }
    }
  }
  return out;
}

Image linear2(const Image& x, UpsampleFactor r, BoundaryMode boundary) {
  const auto op = [&](const Signal& line) { return linear(line, r, boundary); };
  return apply_separable(apply_separable(x, r.size(), true, op), r.size(), false, op);
}

Image pixel_shuffle2(std::span<const Image> channels, UpsampleFactor r) {
  const std::size_t rr = r.size();
  if (channels.size() != rr * rr) {
    throw InvalidInput("pixel_shuffle2: expected " + std::to_string(rr * rr) +
                       " images, got " + std::to_string(channels.size()));
  }
  const Image& first = channels[0];
  for (const Image& ch : channels) {
    if (!ch.same_shape(first)) throw InvalidInput("pixel_shuffle2: image shapes differ");
  }
  Image out(rr * first.height(), rr * first.width(), first.channels());
  for (std::size_t a = 0; a < rr; ++a) {
    for (std::size_t b = 0; b < rr; ++b) {
      const Image& src = channels[a * rr + b];
      for (std::size_t h = 0; h < first.height(); ++h) {
        for (std::size_t w = 0; w < first.width(); ++w) {
          for (std::size_t c = 0; c < first.channels(); ++c) {
            out.at(rr * h + a, rr * w + b, c) = src.at(h, w, c);
          }
        }
      }
    }
  }
  return out;
}

std::vector<Image> pixel_unshuffle2(const Image& x, UpsampleFactor r) {
  const std::size_t rr = r.size();
  if (x.height() % rr != 0 || x.width() % rr != 0) {
    throw InvalidInput("pixel_unshuffle2: image dimensions not divisible by " +
                       std::to_string(rr));
  }
  const std::size_t hh = x.height() / rr;
  const std::size_t ww = x.width() / rr;
  std::vector<Image> out;
  out.reserve(rr * rr);
  for (std::size_t a = 0; a < rr; ++a) {
    for (std::size_t b = 0; b < rr; ++b) {
      Image ch(hh, ww, x.channels());
      for (std::size_t h = 0; h < hh; ++h) {
        for (std::size_t w = 0; w < ww; ++w) {
          for (std::size_t c = 0; c < x.channels(); ++c) {
            ch.at(h, w, c) = x.at(rr * h + a, rr * w + b, c);
          }
        }
      }
      out.push_back(std::move(ch));
    }
  }
  return out;
}

Image transposed_conv2(const Image& x, const KernelSpec2D& kernel,
                       BoundaryMode boundary) {
  const std::size_t stride = static_cast<std::size_t>(kernel.stride());
  Image out(stride * x.height(), stride * x.width(), x.channels());
  scatter_taps2(x, kernel.weights(), kernel.size(), stride, boundary, out);
  if (kernel.small_size()) {
    std::vector<double> small(*kernel.small_size() * *kernel.small_size());
    for (std::size_t a = 0; a < *kernel.small_size(); ++a) {
      for (std::size_t b = 0; b < *kernel.small_size(); ++b) {
        small[a * *kernel.small_size() + b] = kernel.small_at(a, b);
      }
    }
    scatter_taps2(x, small, *kernel.small_size(), stride, boundary, out);
  }
  return out;
}

Image fourier_pad_upsample2(const Image& x, UpsampleFactor r) {
  const auto op = [&](const Signal& line) { return fourier_pad_upsample(line, r); };
  return apply_separable(apply_separable(x, r.size(), true, op), r.size(), false, op);
}

std::string_view to_string(UpsamplerKind kind) {
  switch (kind) {
    case UpsamplerKind::kBedOfNails: return "bed_of_nails";
    case UpsamplerKind::kNearest: return "nearest";
    case UpsamplerKind::kLinear: return "linear";
    case UpsamplerKind::kTransposedConv: return "transposed_conv";
    case UpsamplerKind::kFourierPad: return "fourier_pad";
  }
  return "unknown";
}

UpsamplerKind parse_upsampler_kind(std::string_view name) {
  for (UpsamplerKind kind :
       {UpsamplerKind::kBedOfNails, UpsamplerKind::kNearest, UpsamplerKind::kLinear,
        UpsamplerKind::kTransposedConv, UpsamplerKind::kFourierPad}) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidInput("unknown upsampler '" + std::string(name) + "'");
}

Upsampler Upsampler::bed_of_nails(UpsampleFactor r) {
  return {UpsamplerKind::kBedOfNails, r.value(), BoundaryMode::kPeriodic, std::nullopt};
}

Upsampler Upsampler::nearest(UpsampleFactor r) {
  return {UpsamplerKind::kNearest, r.value(), BoundaryMode::kPeriodic, std::nullopt};
}

Upsampler Upsampler::linear(UpsampleFactor r, BoundaryMode boundary) {
  return {UpsamplerKind::kLinear, r.value(), boundary, std::nullopt};
}

Upsampler Upsampler::transposed(KernelSpec kernel, BoundaryMode boundary) {
  const int stride = kernel.stride();
  return {UpsamplerKind::kTransposedConv, stride, boundary, std::move(kernel)};
}

Upsampler Upsampler::fourier_pad(UpsampleFactor r) {
  return {UpsamplerKind::kFourierPad, r.value(), BoundaryMode::kPeriodic, std::nullopt};
}

Signal apply(const Upsampler& op, const Signal& x) {
  switch (op.kind) {
    case UpsamplerKind::kBedOfNails:
      return bed_of_nails(x, UpsampleFactor(op.factor));
    case UpsamplerKind::kNearest:
      return nearest(x, UpsampleFactor(op.factor));
    case UpsamplerKind::kLinear:
      return linear(x, UpsampleFactor(op.factor), op.boundary);
    case UpsamplerKind::kTransposedConv:
      if (!op.kernel) throw InvalidInput("transposed_conv upsampler without kernel");
      return transposed_conv(x, *op.kernel, op.boundary);
    case UpsamplerKind::kFourierPad:
      return fourier_pad_upsample(x, UpsampleFactor(op.factor));
  }
  throw InvalidInput("unknown upsampler kind");
}

Eigen::MatrixXd operator_matrix(const Upsampler& op, std::size_t n) {
  if (n == 0) throw InvalidInput("operator_matrix: n must be >= 1");
  const std::size_t rows = static_cast<std::size_t>(op.factor) * n;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
  std::vector<double> basis(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    basis[j] = 1.0;
    const Signal col = apply(op, Signal(basis));
    basis[j] = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    }
  }
  return m;
}

}  // namespace upspec
