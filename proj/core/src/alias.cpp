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

#include "upspec/alias.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "upspec/dft.hpp"
#include "upspec/errors.hpp"

namespace upspec {

namespace {

using std::numbers::pi;

enum class Band { kPass, kNyquist, kAlias };

// Classifies unshifted bin k of a length-(r*n) transform against the band
// limit of a length-n signal.
Band classify(std::size_t k, std::size_t len, std::size_t n) {
  const long kc = centered_index(k, len);
  const std::size_t twice = 2 * static_cast<std::size_t>(std::labs(kc));
  if (twice < n) return Band::kPass;
  if (twice == n) return Band::kNyquist;
  return Band::kAlias;
}

void finish_ratio(AliasReport& report) {
  const double total = report.alias_energy + report.passband_energy;
  report.alias_ratio = total > 0.0 ? report.alias_energy / total : 0.0;
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(pi * x) / (pi * x);
}

void fill_stats(const std::vector<std::int64_t>& counts, bool& uniform,
                double& variance) {
  uniform = std::adjacent_find(counts.begin(), counts.end(),
                               std::not_equal_to<>()) == counts.end();
  double mean = 0.0;
  for (std::int64_t c : counts) mean += static_cast<double>(c);
  mean /= static_cast<double>(counts.size());
  variance = 0.0;
  for (std::int64_t c : counts) {
    const double d = static_cast<double>(c) - mean;
    variance += d * d;
  }
  variance /= static_cast<double>(counts.size());
  if (uniform) variance = 0.0;
}

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b)) throw InvalidInput(std::string(what) + ": image shapes differ");
}

}  // namespace

AliasReport alias_energy(const Signal& y, UpsampleFactor r) {
  if (y.size() % r.size() != 0) {
    throw InvalidInput("alias_energy: length " + std::to_string(y.size()) +
                       " not divisible by factor " + std::to_string(r.value()));
  }
  const std::size_t n = y.size() / r.size();
  const Spectrum spec = dft(y);
  AliasReport report;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double e = std::norm(spec[k]);
    switch (classify(k, spec.size(), n)) {
      case Band::kPass: report.passband_energy += e; break;
      case Band::kNyquist:
        report.nyquist_energy += e;
        report.alias_energy += e;
        break;
      case Band::kAlias: report.alias_energy += e; break;
    }
  }
  finish_ratio(report);
  return report;
}

AliasReport alias_energy2(const Image& y, UpsampleFactor r) {
  if (y.height() % r.size() != 0 || y.width() % r.size() != 0) {
    throw InvalidInput("alias_energy2: image dimensions not divisible by factor " +
                       std::to_string(r.value()));
  }
  const std::size_t nh = y.height() / r.size();
  const std::size_t nw = y.width() / r.size();
  AliasReport report;
  for (const Spectrum2D& spec : dft2(y)) {
    for (std::size_t i = 0; i < spec.height; ++i) {
      const Band bh = classify(i, spec.height, nh);
      for (std::size_t j = 0; j < spec.width; ++j) {
        const Band bw = classify(j, spec.width, nw);
        const double e = std::norm(spec.at(i, j));
        if (bh == Band::kAlias || bw == Band::kAlias) {
          report.alias_energy += e;
        } else if (bh == Band::kPass && bw == Band::kPass) {
          report.passband_energy += e;
        } else {
          report.nyquist_energy += e;
          report.alias_energy += e;
        }
      }
    }
  }
  finish_ratio(report);
  return report;
}

double replica_deviation(const Signal& x, const Signal& y, UpsampleFactor r) {
  if (y.size() != r.size() * x.size()) {
    throw InvalidInput("replica_deviation: expected y of length " +
                       std::to_string(r.size() * x.size()) + ", got " +
                       std::to_string(y.size()));
  }
  const Spectrum fx = dft(x);
  const Spectrum fy = dft(y);
  double worst = 0.0;
  for (std::size_t k = 0; k < fy.size(); ++k) {
    worst = std::max(worst, std::abs(fy[k] - fx[k % x.size()]));
  }
  return worst;
}

double replica_deviation2(const Image& x, const Image& y, UpsampleFactor r) {
  if (y.height() != r.size() * x.height() || y.width() != r.size() * x.width() ||
      y.channels() != x.channels()) {
    throw InvalidInput("replica_deviation2: y is not an r-times upsampled x");
  }
  const auto fx = dft2(x);
  const auto fy = dft2(y);
  double worst = 0.0;
  for (std::size_t c = 0; c < fx.size(); ++c) {
    for (std::size_t i = 0; i < fy[c].height; ++i) {
      for (std::size_t j = 0; j < fy[c].width; ++j) {
        worst = std::max(worst, std::abs(fy[c].at(i, j) -
                                         fx[c].at(i % x.height(), j % x.width())));
      }
    }
  }
  return worst;
}

AliasReport analyze_upsampling(const Signal& x, const Signal& y, UpsampleFactor r) {
  AliasReport report = alias_energy(y, r);
  report.replica_deviation = replica_deviation(x, y, r);
  return report;
}

AliasReport analyze_upsampling2(const Image& x, const Image& y, UpsampleFactor r) {
  AliasReport report = alias_energy2(y, r);
  report.replica_deviation = replica_deviation2(x, y, r);
  return report;
}

std::string_view to_string(FilterMethod method) {
  switch (method) {
    case FilterMethod::kBedOfNails: return "bed_of_nails";
    case FilterMethod::kNearest: return "nearest";
    case FilterMethod::kLinear: return "linear";
  }
  return "unknown";
}

FilterMethod parse_filter_method(std::string_view name) {
  for (FilterMethod m :
       {FilterMethod::kBedOfNails, FilterMethod::kNearest, FilterMethod::kLinear}) {
    if (to_string(m) == name) return m;
  }
  throw InvalidInput("filter_response: unknown method '" + std::string(name) + "'");
}

std::vector<ResponsePoint> filter_response(FilterMethod method, UpsampleFactor r,
                                           std::size_t n_points) {
  if (n_points < 2) throw InvalidInput("filter_response: n_points must be >= 2");
  std::vector<ResponsePoint> out(n_points);
  const double top = 0.5 * static_cast<double>(r.value());
  for (std::size_t i = 0; i < n_points; ++i) {
    const double ell = top * static_cast<double>(i) / static_cast<double>(n_points - 1);
    double mag = 1.0;
    if (method == FilterMethod::kNearest) {
      mag = std::abs(sinc(ell));
    } else if (method == FilterMethod::kLinear) {
      mag = sinc(ell) * sinc(ell);
    }
    out[i] = {ell, mag};
  }
  return out;
}

double replicated_filter_response(FilterMethod method, UpsampleFactor r, double ell) {
  const double rr = static_cast<double>(r.value());
  if (method == FilterMethod::kBedOfNails) return 1.0;
  const double denom = std::sin(pi * ell / rr);
  // ell on a multiple of r: every replica but one vanishes.
  if (std::abs(denom) < 1e-12) return rr;
  const double num = std::sin(pi * ell);
  if (method == FilterMethod::kNearest) return std::abs(num / denom);
  return num * num / (rr * denom * denom);
}

std::vector<BinResponse> empirical_filter_response(FilterMethod method,
                                                   UpsampleFactor r, std::size_t n) {
  if (n < 4) throw InvalidInput("empirical_filter_response: n must be >= 4");
  std::vector<double> impulse(n, 0.0);
  impulse[0] = 1.0;
  const Signal x(std::move(impulse));
  Signal y = x;
  switch (method) {
    case FilterMethod::kBedOfNails: y = bed_of_nails(x, r); break;
    case FilterMethod::kNearest: y = nearest(x, r); break;
    case FilterMethod::kLinear: y = linear(x, r, BoundaryMode::kPeriodic); break;
  }
  const Spectrum spec = dft(y);
  std::vector<BinResponse> out(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    out[k] = {k, static_cast<double>(k) / static_cast<double>(n), std::abs(spec[k])};
  }
  return out;
}

ContributionMap contribution_map(const KernelSpec& kernel, std::size_t out_len) {
  const std::size_t s = static_cast<std::size_t>(kernel.stride());
  if (out_len == 0 || out_len % s != 0) {
    throw InvalidInput("contribution_map: out_len " + std::to_string(out_len) +
                       " is not a positive multiple of stride " + std::to_string(s));
  }
  ContributionMap map;
  map.counts.assign(out_len, 0);
  map.period = kernel.stride();
  const auto place = [&](std::size_t size) {
    const long anchor = static_cast<long>(size / 2);
    const long len = static_cast<long>(out_len);
    for (std::size_t i = 0; i < out_len / s; ++i) {
      for (std::size_t j = 0; j < size; ++j) {
        long p = (static_cast<long>(s * i + j) - anchor) % len;
        if (p < 0) p += len;
        ++map.counts[static_cast<std::size_t>(p)];
      }
    }
  };
  place(kernel.size());
  if (kernel.parallel_small()) place(kernel.parallel_small()->size());
  fill_stats(map.counts, map.uniform, map.variance);
  map.stride_divides_kernel = kernel.size() % s == 0;
  return map;
}

ContributionMap2D contribution_map2(const KernelSpec2D& kernel, std::size_t out_h,
                                    std::size_t out_w) {
  const std::size_t s = static_cast<std::size_t>(kernel.stride());
  if (out_h == 0 || out_w == 0 || out_h % s != 0 || out_w % s != 0) {
    throw InvalidInput("contribution_map2: output dims must be positive multiples of the stride");
  }
  ContributionMap2D map;
  map.height = out_h;
  map.width = out_w;
  map.counts.assign(out_h * out_w, 0);
  const auto place = [&](std::size_t size) {
    const long anchor = static_cast<long>(size / 2);
    const long hh = static_cast<long>(out_h);
    const long ww = static_cast<long>(out_w);
    for (std::size_t i = 0; i < out_h / s; ++i) {
      for (std::size_t j = 0; j < out_w / s; ++j) {
        for (std::size_t a = 0; a < size; ++a) {
          long p = (static_cast<long>(s * i + a) - anchor) % hh;
          if (p < 0) p += hh;
          for (std::size_t b = 0; b < size; ++b) {
            long q = (static_cast<long>(s * j + b) - anchor) % ww;
            if (q < 0) q += ww;
            ++map.counts[static_cast<std::size_t>(p * ww + q)];
          }
        }
      }
    }
  };
  place(kernel.size());
  if (kernel.small_size()) place(*kernel.small_size());
  fill_stats(map.counts, map.uniform, map.variance);
  return map;
}

RealGrid error_spectrum(const Image& pred, const Image& gt, ErrorSpectrumMode mode,
                        double floor) {
  require_same_shape(pred, gt, "error_spectrum");
  const std::size_t hh = pred.height();
  const std::size_t ww = pred.width();
  const std::size_t cc = pred.channels();

  std::vector<double> diff(pred.samples().size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = pred.samples()[i] - gt.samples()[i];
  }
  const auto spectra = dft2(Image(hh, ww, cc, std::move(diff)));

  Spectrum2D aggregate{hh, ww, std::vector<Complex>(hh * ww, Complex{}),
                       SpectrumConvention::kUnshifted};
  const double inv_c = 1.0 / static_cast<double>(cc);
  for (const Spectrum2D& s : spectra) {
    for (std::size_t i = 0; i < aggregate.coefficients.size(); ++i) {
      if (mode == ErrorSpectrumMode::kComplexMean) {
        aggregate.coefficients[i] += inv_c * s.coefficients[i];
      } else {
        aggregate.coefficients[i] += inv_c * std::abs(s.coefficients[i]);
      }
    }
  }
  return log_magnitude(center_shift(aggregate), floor);
}

double psnr(const Image& pred, const Image& gt, double peak) {
  require_same_shape(pred, gt, "psnr");
  if (!(peak > 0.0)) throw InvalidInput("psnr: peak must be > 0");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.samples().size(); ++i) {
    const double d = pred.samples()[i] - gt.samples()[i];
    sum += d * d;
  }
  const double mse = sum / static_cast<double>(pred.samples().size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

double psnr(const Signal& pred, const Signal& gt, double peak) {
  if (pred.size() != gt.size()) throw InvalidInput("psnr: signal lengths differ");
  return psnr(Image(1, pred.size(), 1, pred.to_vector()),
              Image(1, gt.size(), 1, gt.to_vector()), peak);
}

}  // namespace upspec
