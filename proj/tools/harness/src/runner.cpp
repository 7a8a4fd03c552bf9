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

#include "upspec/harness/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <numeric>
#include <system_error>

#include "upspec/alias.hpp"
#include "upspec/dft.hpp"
#include "upspec/errors.hpp"
#include "upspec/harness/netpbm.hpp"

namespace upspec::harness {

namespace fs = std::filesystem;

namespace {

// Collects artifacts for one run.
class Writer {
 public:
  explicit Writer(const ExperimentConfig& cfg) : cfg_(cfg) {}

  void text(OutputFormat format, const std::string& name, std::string_view contents) {
    if (!cfg_.wants(format)) return;
    const fs::path path = cfg_.out_dir / name;
    write_file(path, contents);
    result_.files.push_back(path);
  }

  void image(const std::string& stem, const RealGrid& grid) {
    if (!cfg_.wants(OutputFormat::kPgm)) return;
    const fs::path path = cfg_.out_dir / (stem + ".pgm");
    write_netpbm(to_netpbm(grid), path);
    result_.files.push_back(path);
  }

  void color(const std::string& stem, const Image& rgb) {
    if (!cfg_.wants(OutputFormat::kPpm)) return;
    const fs::path path = cfg_.out_dir / (stem + ".ppm");
    write_netpbm(to_netpbm(rgb, NetpbmFormat::kPpm), path);
    result_.files.push_back(path);
  }

  // The JSON artifact is the only place a timestamp appears.
  RunResult finish(const std::string& name, nlohmann::json summary) {
    summary["command"] = std::string(to_string(cfg_.command));
    summary["config"] = cfg_.to_json();
    summary["config_hash"] = cfg_.hash();
    summary["timestamp"] = utc_timestamp();
    nlohmann::json files = nlohmann::json::array();
    for (const auto& f : result_.files) files.push_back(f.filename().string());
    summary["files"] = files;
    text(OutputFormat::kJson, name, summary.dump(2) + "\n");
    result_.summary = std::move(summary);
    return std::move(result_);
  }

 private:
  const ExperimentConfig& cfg_;
  RunResult result_;
};

void require_ppm_channels(const ExperimentConfig& cfg, std::size_t channels) {
  if (cfg.wants(OutputFormat::kPpm) && channels != 3) {
    throw InvalidInput("ppm output needs a 3-channel 2D signal");
  }
}

bool uses_kernel(const ExperimentConfig& cfg) {
  return std::find(cfg.operators.begin(), cfg.operators.end(), "transposed_conv") !=
         cfg.operators.end();
}

// Kernel size whose all-ones contribution count matches the operator's tap
// layout; 0 for pixel shuffle, which places exactly one sample per output.
std::optional<KernelSpec> equivalent_kernel(std::string_view op, int r, std::size_t n,
                                            const std::optional<KernelSpec>& kernel) {
  const auto ones = [&](std::size_t k) {
    return KernelSpec(std::vector<double>(k, 1.0), r);
  };
  const auto ur = static_cast<std::size_t>(r);
  if (op == "bed_of_nails") return ones(1);
  if (op == "nearest") return ones(ur);
  if (op == "linear") return ones(2 * ur - 1);
  if (op == "fourier_pad") return ones(ur * n);
  if (op == "transposed_conv") return kernel;
  return std::nullopt;
}

double reference_peak(std::span<const double> ref) {
  const auto [lo, hi] = std::minmax_element(ref.begin(), ref.end());
  const double range = *hi - *lo;
  return range > 0.0 ? range : 1.0;
}

RealGrid strip(const Signal& s) {
  return RealGrid{1, s.size(), s.to_vector()};
}

RealGrid centered_log_spectrum(const Signal& y, double floor) {
  return strip(log_magnitude(center_shift(dft(y)), floor));
}

// log10 of the channel-mean magnitude, centered.
RealGrid centered_log_spectrum2(const Image& y, double floor) {
  const auto spectra = dft2(y);
  const std::size_t h = y.height();
  const std::size_t w = y.width();
  std::vector<double> mean(h * w, 0.0);
  for (const auto& s : spectra) {
    const Spectrum2D c = center_shift(s);
    for (std::size_t i = 0; i < h * w; ++i) mean[i] += std::abs(c.coefficients[i]);
  }
  for (auto& v : mean) v = std::log10(v / static_cast<double>(spectra.size()) + floor);
  return RealGrid{h, w, std::move(mean)};
}

Image per_channel_log_spectrum(const Image& y, double floor) {
  std::vector<Image> planes;
  for (const auto& s : dft2(y)) {
    const RealGrid g = log_magnitude(center_shift(s), floor);
    planes.emplace_back(g.height, g.width, 1, g.values);
  }
  return Image::from_channels(planes);
}

MetricsRecord make_record(const ExperimentConfig& cfg, std::string_view op,
                          const std::optional<KernelSpec>& kernel, const AliasReport& report,
                          double variance, double psnr_value) {
  MetricsRecord rec;
  rec.op = std::string(op);
  rec.stride = cfg.stride;
  if (op == "transposed_conv" && kernel) {
    rec.kernel_size = kernel->size();
    rec.parallel_small = kernel->parallel_small() ? kernel->parallel_small()->size() : 0;
  }
  rec.report = report;
  rec.contribution_variance = variance;
  rec.psnr_vs_fourier_pad = psnr_value;
  rec.config_hash = cfg.hash();
  return rec;
}

struct Evaluated {
  MetricsRecord record;
  RealGrid spectrum;
  std::optional<Image> color_spectrum;
  std::optional<Signal> output1d;
};

std::vector<Evaluated> evaluate(const ExperimentConfig& cfg) {
  const UpsampleFactor r(cfg.stride);
  std::vector<Evaluated> out;
  if (is_2d(cfg.signal.kind)) {
    require_ppm_channels(cfg, cfg.signal.channels);
    const Image x = generate_image(cfg.signal);
    if (x.height() != x.width() && uses_kernel(cfg) && cfg.weights.empty()) {
      // The fit is per axis; both axes need the same length.
      throw InvalidInput("fitted 2D kernels need a square image");
    }
    std::optional<KernelSpec> kernel;
    if (uses_kernel(cfg)) kernel = resolve_kernel(cfg, x.height());
    const Image ref = fourier_pad_upsample2(x, r);
    for (const auto& op : cfg.operators) {
      const Image y = apply_operator2(op, x, r, cfg.boundary, kernel);
      double variance = 0.0;
      if (auto eq = equivalent_kernel(op, cfg.stride, std::min(x.height(), x.width()), kernel)) {
        variance = contribution_map2(KernelSpec2D::outer(*eq, *eq), y.height(), y.width())
                       .variance;
      }
      Evaluated e{make_record(cfg, op, kernel, analyze_upsampling2(x, y, r), variance,
                              psnr(y, ref, reference_peak(ref.samples()))),
                  centered_log_spectrum2(y, cfg.log_floor), std::nullopt, std::nullopt};
      if (cfg.wants(OutputFormat::kPpm)) e.color_spectrum = per_channel_log_spectrum(y, cfg.log_floor);
      out.push_back(std::move(e));
    }
    return out;
  }
  if (cfg.wants(OutputFormat::kPpm)) require_ppm_channels(cfg, 1);
  const Signal x = generate_signal(cfg.signal);
  std::optional<KernelSpec> kernel;
  if (uses_kernel(cfg)) kernel = resolve_kernel(cfg, x.size());
  const Signal ref = fourier_pad_upsample(x, r);
  for (const auto& op : cfg.operators) {
    const Signal y = apply_operator(op, x, r, cfg.boundary, kernel);
    double variance = 0.0;
    if (auto eq = equivalent_kernel(op, cfg.stride, x.size(), kernel)) {
      variance = contribution_map(*eq, y.size()).variance;
    }
    out.push_back(Evaluated{make_record(cfg, op, kernel, analyze_upsampling(x, y, r), variance,
                                        psnr(y, ref, reference_peak(ref.samples()))),
                            centered_log_spectrum(y, cfg.log_floor), std::nullopt, y});
  }
  return out;
}

std::string metrics_csv(const std::vector<MetricsRecord>& records) {
  std::string csv = MetricsRecord::csv_header();
  for (const auto& rec : records) csv += rec.csv();
  return csv;
}

nlohmann::json edge_json(const KernelSpec& kernel) {
  if (kernel.size() < 3) return nullptr;
  const EdgeProfile p = kernel_edge_profile(kernel);
  return {{"center_mass", json_number(p.center_mass)},
          {"edge_mass", json_number(p.edge_mass)},
          {"decays_toward_edge", p.decays_toward_edge}};
}

std::string kernel_csv(const KernelSpec& kernel) {
  std::string csv = "branch,index,offset,weight\n";
  const auto rows = [&](std::string_view branch, std::span<const double> w) {
    const long anchor = static_cast<long>(w.size() / 2);
    for (std::size_t j = 0; j < w.size(); ++j) {
      const std::string fields[] = {std::string(branch), std::to_string(j),
                                    std::to_string(static_cast<long>(j) - anchor),
                                    format_number(w[j])};
      csv += csv_row(fields);
    }
  };
  rows("main", kernel.weights());
  if (kernel.parallel_small()) rows("small", *kernel.parallel_small());
  return csv;
}

nlohmann::json kernel_json(const KernelSpec& kernel) {
  nlohmann::json main = nlohmann::json::array();
  for (double w : kernel.weights()) main.push_back(json_number(w));
  nlohmann::json j = {{"stride", kernel.stride()}, {"weights", main}};
  if (kernel.parallel_small()) {
    nlohmann::json small = nlohmann::json::array();
    for (double w : *kernel.parallel_small()) small.push_back(json_number(w));
    j["parallel_small"] = small;
  }
  return j;
}

FitProblem fit_problem(const ExperimentConfig& cfg, std::size_t kernel_size) {
  FitProblem p;
  p.n = cfg.signal.n;
  p.factor = cfg.stride;
  p.kernel_size = kernel_size;
  p.parallel_small = cfg.parallel_small;
  if (cfg.corpus_size > 0) {
    p.objective = FitObjective::kCorpusLsq;
    for (std::size_t i = 0; i < cfg.corpus_size; ++i) {
      GeneratorSpec g = cfg.signal;
      g.seed = *cfg.signal.seed + i;
      p.corpus.push_back(generate_signal(g));
    }
  }
  return p;
}

Image errorspec_input_b(const ExperimentConfig& cfg, const Image& a) {
  if (cfg.signal_b) return generate_image(*cfg.signal_b);
  std::vector<double> v(a.samples().begin(), a.samples().end());
  const std::size_t c = a.channels();
  switch (cfg.perturbation) {
    case Perturbation::kPixel:
      for (std::size_t ch = 0; ch < c; ++ch) v[ch] += cfg.perturb_amp;
      break;
    case Perturbation::kCosine: {
      const double two_pi = 2.0 * std::acos(-1.0);
      for (std::size_t h = 0; h < a.height(); ++h) {
        for (std::size_t w = 0; w < a.width(); ++w) {
          const double d =
              cfg.perturb_amp *
              std::cos(two_pi * (cfg.perturb_k * static_cast<double>(h) /
                                     static_cast<double>(a.height()) +
                                 cfg.perturb_k2 * static_cast<double>(w) /
                                     static_cast<double>(a.width())));
          for (std::size_t ch = 0; ch < c; ++ch) v[(h * a.width() + w) * c + ch] += d;
        }
      }
      break;
    }
    default:
      break;
  }
  return Image(a.height(), a.width(), c, std::move(v));
}

nlohmann::json stats_json(std::span<const double> values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  return {{"min", json_number(*lo)}, {"max", json_number(*hi)}, {"mean", json_number(mean)}};
}

}  // namespace

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

KernelSpec resolve_kernel(const ExperimentConfig& cfg, std::size_t n) {
  if (!cfg.weights.empty()) return KernelSpec(cfg.weights, cfg.stride);
  FitProblem p;
  p.n = n;
  p.factor = cfg.stride;
  p.kernel_size = cfg.kernel_size;
  p.parallel_small = cfg.parallel_small;
  return (p.parallel_small ? lctc_fit(p) : fit_closed_form(p)).kernel;
}

std::vector<Signal> shuffle_channels(const Signal& x, UpsampleFactor r) {
  const std::size_t n = x.size();
  const std::size_t step = std::max<std::size_t>(n / r.size(), 1);
  std::vector<Signal> out;
  for (std::size_t m = 0; m < r.size(); ++m) {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = x[(j + m * step) % n];
    out.emplace_back(std::move(v));
  }
  return out;
}

std::vector<Image> shuffle_channels2(const Image& x, UpsampleFactor r) {
  const std::size_t h = x.height();
  const std::size_t w = x.width();
  const std::size_t c = x.channels();
  const std::size_t sh = std::max<std::size_t>(h / r.size(), 1);
  const std::size_t sw = std::max<std::size_t>(w / r.size(), 1);
  std::vector<Image> out;
  for (std::size_t a = 0; a < r.size(); ++a) {
    for (std::size_t b = 0; b < r.size(); ++b) {
      Image img(h, w, c);
      for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < w; ++j) {
          for (std::size_t ch = 0; ch < c; ++ch) {
            img.at(i, j, ch) = x.at((i + a * sh) % h, (j + b * sw) % w, ch);
          }
        }
      }
      out.push_back(std::move(img));
    }
  }
  return out;
}

Signal apply_operator(std::string_view op, const Signal& x, UpsampleFactor r,
                      BoundaryMode boundary, const std::optional<KernelSpec>& kernel) {
  if (op == "bed_of_nails") return bed_of_nails(x, r);
  if (op == "nearest") return nearest(x, r);
  if (op == "linear") return linear(x, r, boundary);
  if (op == "pixel_shuffle") return pixel_shuffle(shuffle_channels(x, r), r);
  if (op == "fourier_pad") return fourier_pad_upsample(x, r);
  if (op == "transposed_conv") {
    if (!kernel) throw InvalidInput("transposed_conv needs a kernel");
    return transposed_conv(x, *kernel, boundary);
  }
  throw InvalidInput("unknown operator '" + std::string(op) + "'");
}

Image apply_operator2(std::string_view op, const Image& x, UpsampleFactor r,
                      BoundaryMode boundary, const std::optional<KernelSpec>& kernel) {
  if (op == "bed_of_nails") return bed_of_nails2(x, r);
  if (op == "nearest") return nearest2(x, r);
  if (op == "linear") return linear2(x, r, boundary);
  if (op == "pixel_shuffle") return pixel_shuffle2(shuffle_channels2(x, r), r);
  if (op == "fourier_pad") return fourier_pad_upsample2(x, r);
  if (op == "transposed_conv") {
    if (!kernel) throw InvalidInput("transposed_conv needs a kernel");
    return transposed_conv2(x, KernelSpec2D::outer(*kernel, *kernel), boundary);
  }
  throw InvalidInput("unknown operator '" + std::string(op) + "'");
}

std::vector<MetricsRecord> compare_metrics(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<MetricsRecord> records;
  for (auto& e : evaluate(cfg)) records.push_back(std::move(e.record));
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.report.alias_ratio < b.report.alias_ratio;
  });
  return records;
}

RealGrid kernel_bar_strip(const KernelSpec& kernel, std::size_t height) {
  std::vector<double> taps(kernel.weights().begin(), kernel.weights().end());
  std::vector<bool> gap(taps.size(), false);
  if (kernel.parallel_small()) {
    taps.push_back(0.0);
    gap.push_back(true);
    for (double w : *kernel.parallel_small()) {
      taps.push_back(w);
      gap.push_back(false);
    }
  }
  const double lo = std::min(0.0, *std::min_element(taps.begin(), taps.end()));
  const double hi = std::max(0.0, *std::max_element(taps.begin(), taps.end()));
  RealGrid grid{height, taps.size(), std::vector<double>(height * taps.size(), 0.0)};
  if (!(hi > lo)) return grid;
  for (std::size_t row = 0; row < height; ++row) {
    const double level =
        hi - (static_cast<double>(row) + 0.5) * (hi - lo) / static_cast<double>(height);
    for (std::size_t col = 0; col < taps.size(); ++col) {
      const double w = taps[col];
      const bool filled = !gap[col] && (w >= 0 ? (level >= 0 && level <= w)
                                               : (level <= 0 && level >= w));
      grid.values[row * taps.size() + col] = filled ? 1.0 : 0.0;
    }
  }
  return grid;
}

RunResult run(const ExperimentConfig& cfg) {
  cfg.validate();
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec || !fs::is_directory(cfg.out_dir)) {
    throw IoError(cfg.out_dir, "cannot create output directory" +
                                   (ec ? ": " + ec.message() : std::string()));
  }
  switch (cfg.command) {
    case Command::kAnalyze:
      return run_analyze(cfg);
    case Command::kCompare:
      return run_compare(cfg);
    case Command::kContribution:
      return run_contribution(cfg);
    case Command::kFit:
      return run_fit(cfg);
    case Command::kSweep:
      return run_sweep(cfg);
    case Command::kErrorspec:
      return run_errorspec(cfg);
  }
  throw InvalidInput("unknown command");
}

RunResult run_analyze(const ExperimentConfig& cfg) {
  cfg.validate();
  Writer out(cfg);
  std::vector<MetricsRecord> records;
  nlohmann::json per_op = nlohmann::json::array();
  const bool one_d = !is_2d(cfg.signal.kind);
  if (one_d) {
    const Signal x = generate_signal(cfg.signal);
    std::string csv = "k_centered,magnitude,log_magnitude\n";
    const Spectrum c = center_shift(dft(x));
    for (std::size_t k = 0; k < c.size(); ++k) {
      const std::string fields[] = {
          std::to_string(static_cast<long>(k) - static_cast<long>(c.size() / 2)),
          format_number(std::abs(c[k])), format_number(std::log10(std::abs(c[k]) + cfg.log_floor))};
      csv += csv_row(fields);
    }
    out.text(OutputFormat::kCsv, "spectrum_input.csv", csv);
    out.image("spectrum_input", centered_log_spectrum(x, cfg.log_floor));
  }
  for (auto& e : evaluate(cfg)) {
    const std::string& op = e.record.op;
    if (e.output1d) {
      const Spectrum c = center_shift(dft(*e.output1d));
      std::string csv = "k_centered,magnitude,log_magnitude\n";
      for (std::size_t k = 0; k < c.size(); ++k) {
        const std::string fields[] = {
            std::to_string(static_cast<long>(k) - static_cast<long>(c.size() / 2)),
            format_number(std::abs(c[k])),
            format_number(std::log10(std::abs(c[k]) + cfg.log_floor))};
        csv += csv_row(fields);
      }
      out.text(OutputFormat::kCsv, "spectrum_" + op + ".csv", csv);
      if ((op == "bed_of_nails" || op == "nearest" || op == "linear") && cfg.signal.n >= 4) {
        const FilterMethod method = parse_filter_method(op);
        const UpsampleFactor r(cfg.stride);
        std::string resp = "bin,frequency,empirical,replicated\n";
        for (const auto& b : empirical_filter_response(method, r, cfg.signal.n)) {
          const std::string fields[] = {std::to_string(b.bin), format_number(b.frequency),
                                        format_number(b.magnitude),
                                        format_number(replicated_filter_response(method, r, b.frequency))};
          resp += csv_row(fields);
        }
        out.text(OutputFormat::kCsv, "response_" + op + ".csv", resp);
      }
    }
    out.image("spectrum_" + op, e.spectrum);
    if (e.color_spectrum) out.color("spectrum_" + op, *e.color_spectrum);
    per_op.push_back(e.record.json());
    records.push_back(std::move(e.record));
  }
  out.text(OutputFormat::kCsv, "metrics.csv", metrics_csv(records));
  return out.finish("analyze.json", {{"records", per_op}});
}

RunResult run_compare(const ExperimentConfig& cfg) {
  cfg.validate();
  Writer out(cfg);
  std::vector<Evaluated> evaluated = evaluate(cfg);
  std::stable_sort(evaluated.begin(), evaluated.end(), [](const auto& a, const auto& b) {
    return a.record.report.alias_ratio < b.record.report.alias_ratio;
  });
  std::vector<MetricsRecord> records;
  nlohmann::json rows = nlohmann::json::array();
  for (auto& e : evaluated) {
    out.image("spectrum_" + e.record.op, e.spectrum);
    if (e.color_spectrum) out.color("spectrum_" + e.record.op, *e.color_spectrum);
    rows.push_back(e.record.json());
    records.push_back(std::move(e.record));
  }
  out.text(OutputFormat::kCsv, "metrics.csv", metrics_csv(records));
  return out.finish("compare.json", {{"records", rows}});
}

RunResult run_contribution(const ExperimentConfig& cfg) {
  cfg.validate();
  Writer out(cfg);
  std::vector<double> main = cfg.weights.empty() ? std::vector<double>(cfg.kernel_size, 1.0)
                                                 : cfg.weights;
  std::optional<std::vector<double>> small;
  if (cfg.parallel_small) small = std::vector<double>(*cfg.parallel_small, 1.0);
  const KernelSpec kernel(std::move(main), cfg.stride, std::move(small));
  const auto s = static_cast<std::size_t>(cfg.stride);
  nlohmann::json summary = {{"kernel_size", kernel.size()},
                            {"stride", cfg.stride},
                            {"parallel_small", cfg.parallel_small.value_or(0)},
                            {"stride_divides_kernel", kernel.size() % s == 0}};
  if (is_2d(cfg.signal.kind)) {
    const std::size_t oh = s * cfg.signal.height;
    const std::size_t ow = s * cfg.signal.width;
    const ContributionMap2D map = contribution_map2(KernelSpec2D::outer(kernel, kernel), oh, ow);
    std::string csv = "row,col,count\n";
    std::vector<double> values;
    for (std::size_t i = 0; i < oh; ++i) {
      for (std::size_t j = 0; j < ow; ++j) {
        const auto count = map.counts[i * ow + j];
        const std::string fields[] = {std::to_string(i), std::to_string(j), std::to_string(count)};
        csv += csv_row(fields);
        values.push_back(static_cast<double>(count));
      }
    }
    out.text(OutputFormat::kCsv, "contribution.csv", csv);
    out.image("contribution", RealGrid{oh, ow, values});
    summary["height"] = oh;
    summary["width"] = ow;
    summary["uniform"] = map.uniform;
    summary["variance"] = json_number(map.variance);
    summary["period"] = cfg.stride;
    return out.finish("contribution.json", summary);
  }
  const ContributionMap map = contribution_map(kernel, s * cfg.signal.n);
  std::string csv = "position,count\n";
  std::vector<double> values;
  for (std::size_t p = 0; p < map.counts.size(); ++p) {
    const std::string fields[] = {std::to_string(p), std::to_string(map.counts[p])};
    csv += csv_row(fields);
    values.push_back(static_cast<double>(map.counts[p]));
  }
  out.text(OutputFormat::kCsv, "contribution.csv", csv);
  out.image("contribution", RealGrid{1, values.size(), values});
  summary["length"] = map.counts.size();
  summary["uniform"] = map.uniform;
  summary["variance"] = json_number(map.variance);
  summary["period"] = map.period;
  summary["counts"] = map.counts;
  return out.finish("contribution.json", summary);
}

RunResult run_fit(const ExperimentConfig& cfg) {
  cfg.validate();
  if (is_2d(cfg.signal.kind)) throw InvalidInput("fit works on 1D signal lengths");
  Writer out(cfg);
  const FitProblem problem = fit_problem(cfg, cfg.kernel_size);
  std::optional<FitResult> fit;
  if (cfg.gradient_descent) {
    GradientDescentOptions opts;
    opts.learning_rate = cfg.learning_rate;
    opts.max_iter = cfg.max_iter;
    opts.tol = cfg.tol;
    opts.record_history = true;
    fit.emplace(fit_gradient_descent(problem, opts));
  } else if (cfg.parallel_small) {
    fit.emplace(lctc_fit(problem));
  } else {
    fit.emplace(fit_closed_form(problem));
  }
  out.text(OutputFormat::kCsv, "kernel.csv", kernel_csv(fit->kernel));
  if (cfg.gradient_descent) {
    std::string csv = "iteration,objective\n";
    for (std::size_t i = 0; i < fit->objective_history.size(); ++i) {
      const std::string fields[] = {std::to_string(i), format_number(fit->objective_history[i])};
      csv += csv_row(fields);
    }
    out.text(OutputFormat::kCsv, "history.csv", csv);
  }
  out.image("kernel", kernel_bar_strip(fit->kernel));
  return out.finish("fit.json", {{"residual", json_number(fit->residual)},
                                 {"iterations", fit->iterations},
                                 {"rank", fit->rank},
                                 {"rank_deficient", fit->rank_deficient},
                                 {"kernel", kernel_json(fit->kernel)},
                                 {"edge_profile", edge_json(fit->kernel)}});
}

RunResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (is_2d(cfg.signal.kind)) throw InvalidInput("sweep works on 1D signal lengths");
  Writer out(cfg);
  const auto points = residual_sweep(cfg.signal.n, cfg.stride, cfg.sweep_sizes);
  std::string csv = "kernel_size,residual\n";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : points) {
    const std::string fields[] = {std::to_string(p.kernel_size), format_number(p.residual)};
    csv += csv_row(fields);
    FitProblem problem;
    problem.n = cfg.signal.n;
    problem.factor = cfg.stride;
    problem.kernel_size = p.kernel_size;
    const FitResult fit = fit_closed_form(problem);
    out.image("kernel_K" + std::to_string(p.kernel_size), kernel_bar_strip(fit.kernel));
    rows.push_back({{"kernel_size", p.kernel_size},
                    {"residual", json_number(p.residual)},
                    {"edge_profile", edge_json(fit.kernel)}});
  }
  out.text(OutputFormat::kCsv, "residuals.csv", csv);
  return out.finish("sweep.json", {{"points", rows}});
}

RunResult run_errorspec(const ExperimentConfig& cfg) {
  cfg.validate();
  Writer out(cfg);
  std::optional<Image> a;
  std::optional<Image> b;
  fs::path b_name = "signal_b";
  if (cfg.input_a) {
    a = to_image(read_netpbm(*cfg.input_a));
    b = to_image(read_netpbm(*cfg.input_b));
    b_name = *cfg.input_b;
  } else {
    a = generate_image(cfg.signal);
    b = errorspec_input_b(cfg, *a);
  }
  if (!a->same_shape(*b)) {
    throw IoError(b_name, "shape " + std::to_string(b->height()) + "x" +
                              std::to_string(b->width()) + "x" + std::to_string(b->channels()) +
                              " does not match " + std::to_string(a->height()) + "x" +
                              std::to_string(a->width()) + "x" + std::to_string(a->channels()));
  }
  const RealGrid grid =
      error_spectrum(*a, *b,
                     cfg.magnitude_mean ? ErrorSpectrumMode::kMagnitudeMean
                                        : ErrorSpectrumMode::kComplexMean,
                     cfg.log_floor);
  std::string csv = "row,col,k_row,k_col,log_magnitude\n";
  std::vector<double> linear;
  for (std::size_t i = 0; i < grid.height; ++i) {
    for (std::size_t j = 0; j < grid.width; ++j) {
      const double v = grid.at(i, j);
      const std::string fields[] = {
          std::to_string(i), std::to_string(j),
          std::to_string(static_cast<long>(i) - static_cast<long>(grid.height / 2)),
          std::to_string(static_cast<long>(j) - static_cast<long>(grid.width / 2)),
          format_number(v)};
      csv += csv_row(fields);
      linear.push_back(std::max(0.0, std::pow(10.0, v) - cfg.log_floor));
    }
  }
  out.text(OutputFormat::kCsv, "error_spectrum.csv", csv);
  out.image("error_spectrum", grid);
  return out.finish("errorspec.json",
                    {{"height", grid.height},
                     {"width", grid.width},
                     {"channels", a->channels()},
                     {"mode", cfg.magnitude_mean ? "magnitude_mean" : "complex_mean"},
                     {"log10_magnitude", stats_json(grid.values)},
                     {"magnitude", stats_json(linear)}});
}

}  // namespace upspec::harness
