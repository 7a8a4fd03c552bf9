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

#ifndef UPSPEC_KERNEL_FIT_HPP_
#define UPSPEC_KERNEL_FIT_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "upspec/signal.hpp"
#include "upspec/upsamplers.hpp"

namespace upspec {

enum class FitObjective {
  // || sum_j w_j B_j - U* ||_F^2 against the ideal operator U*.
  kOperatorFrobenius,
  // sum over corpus signals x of || T(w) x - U* x ||^2.
  kCorpusLsq,
};

/// Fit of a stride-r periodic transposed convolution to Fourier-pad
/// upsampling of length-n signals.
struct FitProblem {
  std::size_t n = 0;
  int factor = 2;  // r, also the kernel stride
  std::size_t kernel_size = 1;
  // Size of a parallel small branch (3 for the large-context block).
  std::optional<std::size_t> parallel_small;
  FitObjective objective = FitObjective::kOperatorFrobenius;
  std::vector<Signal> corpus;

  // Throws InvalidInput on inconsistent dimensions.
  void validate() const;
  // Total number of free weights, main plus parallel branch.
  std::size_t num_weights() const {
    return kernel_size + parallel_small.value_or(0);
  }
};

struct FitResult {
  explicit FitResult(KernelSpec fitted) : kernel(std::move(fitted)) {}

  KernelSpec kernel;
  // Frobenius distance to U*, or the root-mean corpus error for kCorpusLsq.
  double residual = 0.0;
  int iterations = 0;  // 0 for the closed form
  std::vector<double> objective_history;
  std::size_t rank = 0;  // numerical rank of the Gram matrix
  bool rank_deficient = false;
};

/// B_j for j < K: operator matrix of the transposed convolution with the
/// one-hot kernel e_j, stride r, periodic boundary. T(w) = sum_j w_j B_j.
std::vector<Eigen::MatrixXd> build_basis(std::size_t n, int r, std::size_t k);

/// The target U*: operator matrix of fourier_pad_upsample.
Eigen::MatrixXd ideal_operator(std::size_t n, int r);

/// Gram matrix G_jl = <B_j, B_l> and right-hand side b_j = <B_j, U*> over
/// the union basis (main taps first, then parallel taps), with the
/// corpus-weighted inner products for kCorpusLsq.
struct NormalEquations {
  Eigen::MatrixXd gram;
  Eigen::VectorXd rhs;
  double target_norm2 = 0.0;  // ||U*||^2 under the same inner product
};
NormalEquations normal_equations(const FitProblem& problem);

/// Objective value and its analytic gradient 2 <T(w) - U*, B_j>.
double objective_value(const FitProblem& problem, std::span<const double> weights);
std::vector<double> objective_gradient(const FitProblem& problem,
                                       std::span<const double> weights);

/// Minimum-norm solution of the normal equations. Eigenvalues of G below
/// 1e-12 * trace(G) are treated as zero; the residual is recomputed from the
/// fitted operator, not taken from the solve.
FitResult fit_closed_form(const FitProblem& problem);

struct GradientDescentOptions {
  // Defaults to 1 / (2 lambda_max(G)), lambda_max from 20 power iterations.
  std::optional<double> learning_rate;
  int max_iter = 100000;
  double tol = 1e-12;  // relative objective change
  // Starting weights; zeros when empty.
  std::vector<double> initial;
  bool record_history = false;
};

/// Plain gradient descent on the same quadratic. Throws DivergenceError when
/// the objective rises for 10 consecutive steps.
FitResult fit_gradient_descent(const FitProblem& problem,
                               const GradientDescentOptions& options = {});

/// Closed-form fit with a parallel small branch. Requires K >= 5 and
/// parallel_small set. The small branch spans a subset of the main branch
/// taps, so the Gram matrix is singular by construction and the
/// minimum-norm solution is returned.
FitResult lctc_fit(const FitProblem& problem);

struct SweepPoint {
  std::size_t kernel_size = 0;
  double residual = 0.0;
};

/// Closed-form residual for each K; sizes must be non-decreasing.
std::vector<SweepPoint> residual_sweep(std::size_t n, int r,
                                       std::span<const std::size_t> kernel_sizes);

struct EdgeProfile {
  double center_mass = 0.0;  // mean |w| over the central third
  double edge_mass = 0.0;    // mean |w| over the outer sixth on each side
  bool decays_toward_edge = false;
};

/// Tap i is central when |i - (K-1)/2| < K/6 and an edge tap when
/// min(i, K-1-i) < K/6. Requires K >= 3.
EdgeProfile kernel_edge_profile(const KernelSpec& kernel);

// Power iteration from the all-ones vector.
double largest_eigenvalue(const Eigen::MatrixXd& symmetric, int iterations = 20);

}  // namespace upspec

#endif  // UPSPEC_KERNEL_FIT_HPP_
