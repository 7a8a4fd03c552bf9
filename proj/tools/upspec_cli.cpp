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

// upspec: spectral analysis of upsampling operators.
//
//   upspec compare --op bed_of_nails,linear,fourier_pad --signal white_noise
//       --seed 7 --n 64 --out-dir out/
//
// Exit codes: 0 success, 1 usage, 2 I/O, 3 numerical failure. Failures print
// one line to stderr: "upspec: error[<kind>]: <reason>".

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "upspec/errors.hpp"
#include "upspec/harness/config.hpp"
#include "upspec/harness/netpbm.hpp"
#include "upspec/harness/runner.hpp"

namespace {

using upspec::harness::Command;
using upspec::harness::ExperimentConfig;

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kNumerical = 3 };

int fail(ExitCode code, std::string_view kind, std::string_view reason) {
  std::string line(reason);
  for (char& c : line) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::cerr << "upspec: error[" << kind << "]: " << line << "\n";
  return code;
}

// Flags shared by every subcommand, bound to one set of raw values.
struct Flags {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::string format = "csv,json,pgm";
  std::vector<std::string> ops;
  std::optional<std::size_t> kernel_size;
  int stride = 2;
  std::optional<std::size_t> parallel_small;
  std::vector<double> weights;
  std::string boundary = "periodic";
  std::string signal = "cosine";
  std::size_t n = 64;
  std::size_t height = 32;
  std::size_t width = 32;
  std::size_t channels = 1;
  std::size_t cutoff = 0;
  std::vector<double> k{1.0};
  std::vector<double> amp;
  std::vector<double> phase;
  double k2 = 0.0;
  std::vector<std::size_t> sizes;
  std::string mode = "closed";
  std::optional<double> lr;
  int max_iter = 100000;
  double tol = 1e-12;
  std::size_t corpus = 0;
  std::optional<std::string> input_a;
  std::optional<std::string> input_b;
  std::optional<std::string> signal_b;
  std::string perturb = "none";
  double perturb_amp = 1.0;
  double perturb_k = 1.0;
  double perturb_k2 = 0.0;
  bool magnitude_mean = false;
  double log_floor = 1e-12;
};

void add_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--out-dir", f.out_dir, "Output directory (created if missing)");
  sub.add_option("--seed", f.seed, "Seed for random signal kinds");
  sub.add_option("--format", f.format, "Comma list of csv,json,pgm,ppm");
  sub.add_option("--op", f.ops, "Operators: bed_of_nails,nearest,linear,pixel_shuffle,"
                                "transposed_conv,fourier_pad")
      ->delimiter(',');
  sub.add_option("--kernel-size", f.kernel_size, "Transposed-conv kernel size K (default 3)");
  sub.add_option("--stride", f.stride, "Upsampling factor r (kernel stride)");
  sub.add_option("--parallel-small", f.parallel_small, "Size of the parallel small branch");
  sub.add_option("--weights", f.weights, "Explicit kernel weights (default: fitted)")
      ->delimiter(',');
  sub.add_option("--boundary", f.boundary, "periodic or zero_pad");
  sub.add_option("--signal", f.signal,
                 "cosine, cosine_mixture, band_limited, white_noise, step, checkerboard, "
                 "gaussian_blob, edge_texture, cosine2d, noise2d");
  sub.add_option("--n", f.n, "Signal length N");
  sub.add_option("--height", f.height, "Image height");
  sub.add_option("--width", f.width, "Image width");
  sub.add_option("--channels", f.channels, "Image channels");
  sub.add_option("--cutoff", f.cutoff, "Band-limited noise cutoff bin (< N/2)");
  sub.add_option("--k", f.k, "Cosine frequency; a list for cosine_mixture")->delimiter(',');
  sub.add_option("--amp", f.amp, "Cosine amplitude(s)")->delimiter(',');
  sub.add_option("--phase", f.phase, "Cosine phase(s) in radians")->delimiter(',');
  sub.add_option("--k2", f.k2, "Column frequency for cosine2d");
}

upspec::harness::GeneratorSpec generator(const Flags& f, const std::string& kind) {
  upspec::harness::GeneratorSpec g;
  g.kind = upspec::harness::parse_signal_kind(kind);
  g.n = f.n;
  g.height = f.height;
  g.width = f.width;
  g.channels = f.channels;
  g.seed = f.seed;
  g.cutoff = f.cutoff;
  g.k2 = f.k2;
  g.components.clear();
  for (std::size_t i = 0; i < f.k.size(); ++i) {
    upspec::harness::CosineComponent c;
    c.k = f.k[i];
    if (!f.amp.empty()) c.amp = f.amp[std::min(i, f.amp.size() - 1)];
    if (!f.phase.empty()) c.phase = f.phase[std::min(i, f.phase.size() - 1)];
    g.components.push_back(c);
  }
  return g;
}

ExperimentConfig build_config(Command command, const Flags& f) {
  ExperimentConfig cfg;
  cfg.command = command;
  if (!f.ops.empty()) {
    cfg.operators = f.ops;
  } else if (command == Command::kCompare) {
    cfg.operators = {"bed_of_nails", "nearest", "linear", "transposed_conv", "fourier_pad"};
  }
  cfg.stride = f.stride;
  cfg.parallel_small = f.parallel_small;
  cfg.weights = f.weights;
  // Explicit weights set K unless --kernel-size says otherwise.
  if (f.kernel_size) {
    cfg.kernel_size = *f.kernel_size;
  } else if (!f.weights.empty()) {
    cfg.kernel_size = f.weights.size();
  }
  if (f.boundary == "periodic") {
    cfg.boundary = upspec::BoundaryMode::kPeriodic;
  } else if (f.boundary == "zero_pad") {
    cfg.boundary = upspec::BoundaryMode::kZeroPad;
  } else {
    throw upspec::InvalidInput("unknown boundary '" + f.boundary + "'");
  }
  cfg.signal = generator(f, f.signal);
  if (!f.sizes.empty()) cfg.sweep_sizes = f.sizes;
  if (f.mode == "gd") {
    cfg.gradient_descent = true;
  } else if (f.mode != "closed") {
    throw upspec::InvalidInput("unknown fit mode '" + f.mode + "'");
  }
  cfg.learning_rate = f.lr;
  cfg.max_iter = f.max_iter;
  cfg.tol = f.tol;
  cfg.corpus_size = f.corpus;
  if (f.input_a) cfg.input_a = *f.input_a;
  if (f.input_b) cfg.input_b = *f.input_b;
  if (f.signal_b) cfg.signal_b = generator(f, *f.signal_b);
  if (f.perturb == "none") {
    cfg.perturbation = upspec::harness::Perturbation::kNone;
  } else if (f.perturb == "pixel") {
    cfg.perturbation = upspec::harness::Perturbation::kPixel;
  } else if (f.perturb == "cosine") {
    cfg.perturbation = upspec::harness::Perturbation::kCosine;
  } else {
    throw upspec::InvalidInput("unknown perturbation '" + f.perturb + "'");
  }
  cfg.perturb_amp = f.perturb_amp;
  cfg.perturb_k = f.perturb_k;
  cfg.perturb_k2 = f.perturb_k2;
  cfg.magnitude_mean = f.magnitude_mean;
  cfg.log_floor = f.log_floor;
  cfg.out_dir = f.out_dir;
  cfg.formats = upspec::harness::parse_formats(f.format);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of upsampling operators"};
  app.require_subcommand(1);
  Flags flags;

  struct Entry {
    Command command;
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {Command::kAnalyze, "analyze", "Spectra and alias metrics of each operator"},
      {Command::kCompare, "compare", "Operators side by side, sorted by alias ratio"},
      {Command::kContribution, "contribution", "Checkerboard contribution map of a kernel"},
      {Command::kFit, "fit", "Fit a transposed-conv kernel to the ideal upsampler"},
      {Command::kSweep, "sweep", "Closed-form residual over kernel sizes"},
      {Command::kErrorspec, "errorspec", "Log-magnitude spectrum of the difference of two images"},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_flags(*sub, flags);
    subs.emplace_back(e.command, sub);
    switch (e.command) {
      case Command::kFit:
      case Command::kSweep:
        sub->add_option("--sizes", flags.sizes, "Kernel sizes for sweep")->delimiter(',');
        sub->add_option("--mode", flags.mode, "closed or gd");
        sub->add_option("--lr", flags.lr, "Gradient-descent learning rate");
        sub->add_option("--max-iter", flags.max_iter, "Gradient-descent iteration cap");
        sub->add_option("--tol", flags.tol, "Relative objective change to stop at");
        sub->add_option("--corpus", flags.corpus,
                        "Fit on this many generated signals instead of the operator");
        break;
      case Command::kErrorspec:
        sub->add_option("--input-a", flags.input_a, "First Netpbm image");
        sub->add_option("--input-b", flags.input_b, "Second Netpbm image");
        sub->add_option("--signal-b", flags.signal_b, "Generated second image kind");
        sub->add_option("--perturb", flags.perturb, "none, pixel or cosine");
        sub->add_option("--perturb-amp", flags.perturb_amp, "Perturbation amplitude");
        sub->add_option("--perturb-k", flags.perturb_k, "Cosine perturbation row frequency");
        sub->add_option("--perturb-k2", flags.perturb_k2, "Cosine perturbation column frequency");
        sub->add_flag("--magnitude-mean", flags.magnitude_mean,
                      "Average magnitudes over channels instead of complex spectra");
        sub->add_option("--floor", flags.log_floor, "Floor added before log10");
        break;
      default:
        sub->add_option("--floor", flags.log_floor, "Floor added before log10");
        break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kUsage, "usage", e.what());
  }

  try {
    Command command = Command::kAnalyze;
    for (const auto& [c, sub] : subs) {
      if (sub->parsed()) command = c;
    }
    const ExperimentConfig cfg = build_config(command, flags);
    const auto result = upspec::harness::run(cfg);
    for (const auto& path : result.files) std::cout << path.string() << "\n";
    return kOk;
  } catch (const upspec::InvalidInput& e) {
    return fail(kUsage, "usage", e.what());
  } catch (const upspec::harness::IoError& e) {
    return fail(kIo, "io", e.what());
  } catch (const upspec::NumericalError& e) {
    return fail(kNumerical, "numerical", e.what());
  } catch (const std::exception& e) {
    return fail(kNumerical, "internal", e.what());
  }
}
