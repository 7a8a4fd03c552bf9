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

#include "upspec/kernel_fit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "upspec/errors.hpp"

namespace upspec {

namespace {

// Vectorized least-squares system: column j of `design` is B_j (or B_j X for
// a corpus X), `target` is U* (or U* X).
struct LeastSquares {
  Eigen::MatrixXd design;
  Eigen::VectorXd target;
  double residual_scale = 1.0;  // residual = sqrt(scale * ||A w - u||^2)
};

Eigen::MatrixXd corpus_matrix(const FitProblem& p) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(p.n),
                    static_cast<Eigen::Index>(p.corpus.size()));
  for (std::size_t m = 0; m < p.corpus.size(); ++m) {
    for (std::size_t i = 0; i < p.n; ++i) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)) = p.corpus[m][i];
    }
  }
  return x;
}

LeastSquares build_system(const FitProblem& p) {
  p.validate();
  std::vector<Eigen::MatrixXd> basis = build_basis(p.n, p.factor, p.kernel_size);
  if (p.parallel_small) {
    std::vector<Eigen::MatrixXd> small = build_basis(p.n, p.factor, *p.parallel_small);
    basis.insert(basis.end(), small.begin(), small.end());
  }
  Eigen::MatrixXd ideal = ideal_operator(p.n, p.factor);

  LeastSquares sys;
  if (p.objective == FitObjective::kCorpusLsq) {
    const Eigen::MatrixXd x = corpus_matrix(p);
    for (Eigen::MatrixXd& b : basis) b = b * x;
    ideal = ideal * x;
    sys.residual_scale = 1.0 / static_cast<double>(p.corpus.size());
  }

  const Eigen::Index rows = ideal.size();
  sys.design.resize(rows, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    sys.design.col(static_cast<Eigen::Index>(j)) =
        Eigen::Map<const Eigen::VectorXd>(basis[j].data(), rows);
  }
  sys.target = Eigen::Map<const Eigen::VectorXd>(ideal.data(), rows);
  return sys;
}

Eigen::VectorXd to_eigen(std::span<const double> w, std::size_t expected) {
  if (w.size() != expected) {
    throw InvalidInput("kernel fit: expected " + std::to_string(expected) +
                       " weights, got " + std::to_string(w.size()));
  }
  Eigen::VectorXd v(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) v(static_cast<Eigen::Index>(i)) = w[i];
  return v;
}

FitResult make_result(const FitProblem& p, const LeastSquares& sys,
                      const Eigen::VectorXd& w) {
  std::vector<double> main(p.kernel_size);
  for (std::size_t j = 0; j < p.kernel_size; ++j) main[j] = w(static_cast<Eigen::Index>(j));
  std::optional<std::vector<double>> small;
  if (p.parallel_small) {
    small.emplace(*p.parallel_small);
    for (std::size_t j = 0; j < *p.parallel_small; ++j) {
      (*small)[j] = w(static_cast<Eigen::Index>(p.kernel_size + j));
    }
  }
  const double sq = (sys.design * w - sys.target).squaredNorm();
  FitResult result{KernelSpec(std::move(main), p.factor, std::move(small))};
  result.residual = std::sqrt(sys.residual_scale * sq);
  return result;
}

// Minimum-norm solve through the symmetric eigendecomposition.
Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs,
                               std::size_t& rank) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("kernel fit: eigendecomposition of the Gram matrix failed");
  }
  const double cutoff = 1e-12 * gram.trace();
  const Eigen::VectorXd proj = eig.eigenvectors().transpose() * rhs;
  Eigen::VectorXd coeff = Eigen::VectorXd::Zero(proj.size());
  rank = 0;
  for (Eigen::Index i = 0; i < proj.size(); ++i) {
    const double lambda = eig.eigenvalues()(i);
    if (lambda > cutoff) {
      coeff(i) = proj(i) / lambda;
      ++rank;
    }
  }
  return eig.eigenvectors() * coeff;
}

}  // namespace

void FitProblem::validate() const {
  if (n == 0) throw InvalidInput("fit problem: n must be >= 1");
  if (factor < 2) throw InvalidInput("fit problem: factor must be >= 2");
  if (kernel_size == 0) throw InvalidInput("fit problem: kernel size must be >= 1");
  if (parallel_small && (*parallel_small == 0 || *parallel_small > kernel_size)) {
    throw InvalidInput("fit problem: parallel branch size must be in [1, K]");
  }
  if (objective == FitObjective::kCorpusLsq) {
    if (corpus.empty()) throw InvalidInput("fit problem: corpus objective needs a corpus");
    for (const Signal& s : corpus) {
      if (s.size() != n) throw InvalidInput("fit problem: corpus signal length != n");
    }
  }
}

std::vector<Eigen::MatrixXd> build_basis(std::size_t n, int r, std::size_t k) {
  if (n == 0 || r < 2 || k == 0) throw InvalidInput("build_basis: invalid dimensions");
  std::vector<Eigen::MatrixXd> basis;
  basis.reserve(k);
  std::vector<double> one_hot(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    one_hot[j] = 1.0;
    basis.push_back(operator_matrix(
        Upsampler::transposed(KernelSpec(one_hot, r), BoundaryMode::kPeriodic), n));
    one_hot[j] = 0.0;
  }
  return basis;
}

Eigen::MatrixXd ideal_operator(std::size_t n, int r) {
  return operator_matrix(Upsampler::fourier_pad(UpsampleFactor(r)), n);
}

NormalEquations normal_equations(const FitProblem& problem) {
  const LeastSquares sys = build_system(problem);
  return {sys.design.transpose() * sys.design, sys.design.transpose() * sys.target,
          sys.target.squaredNorm()};
}

double objective_value(const FitProblem& problem, std::span<const double> weights) {
  const LeastSquares sys = build_system(problem);
  const Eigen::VectorXd w = to_eigen(weights, problem.num_weights());
  return (sys.design * w - sys.target).squaredNorm();
}

std::vector<double> objective_gradient(const FitProblem& problem,
                                       std::span<const double> weights) {
  const LeastSquares sys = build_system(problem);
  const Eigen::VectorXd w = to_eigen(weights, problem.num_weights());
  const Eigen::VectorXd g = 2.0 * sys.design.transpose() * (sys.design * w - sys.target);
  return {g.data(), g.data() + g.size()};
}

FitResult fit_closed_form(const FitProblem& problem) {
  const LeastSquares sys = build_system(problem);
  const Eigen::MatrixXd gram = sys.design.transpose() * sys.design;
  const Eigen::VectorXd rhs = sys.design.transpose() * sys.target;
  std::size_t rank = 0;
  const Eigen::VectorXd w = min_norm_solve(gram, rhs, rank);
  FitResult result = make_result(problem, sys, w);
  result.rank = rank;
  result.rank_deficient = rank < problem.num_weights();
  return result;
}

double largest_eigenvalue(const Eigen::MatrixXd& symmetric, int iterations) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(symmetric.rows());
  v.normalize();
  double lambda = 0.0;
  for (int i = 0; i < iterations; ++i) {
    const Eigen::VectorXd next = symmetric * v;
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    lambda = v.dot(next);
    v = next / norm;
  }
  return std::max(lambda, v.dot(symmetric * v));
}

FitResult fit_gradient_descent(const FitProblem& problem,
                               const GradientDescentOptions& options) {
  const LeastSquares sys = build_system(problem);
  const Eigen::MatrixXd gram = sys.design.transpose() * sys.design;
  const Eigen::VectorXd rhs = sys.design.transpose() * sys.target;
  const double target_norm2 = sys.target.squaredNorm();

  double lr = 0.0;
  if (options.learning_rate) {
    lr = *options.learning_rate;
  } else {
    const double lambda_max = largest_eigenvalue(gram, 20);
    if (!(lambda_max > 0.0)) throw NumericalError("gradient descent: Gram matrix is zero");
    lr = 1.0 / (2.0 * lambda_max);
  }
  if (!(lr > 0.0)) throw InvalidInput("gradient descent: learning rate must be > 0");

  Eigen::VectorXd w = options.initial.empty()
                          ? Eigen::VectorXd::Zero(static_cast<Eigen::Index>(problem.num_weights()))
                          : to_eigen(options.initial, problem.num_weights());

  const auto objective = [&](const Eigen::VectorXd& v) {
    return std::max(0.0, v.dot(gram * v) - 2.0 * rhs.dot(v) + target_norm2);
  };
  const double exact_floor = 1e-24 * std::max(target_norm2, 1.0);
  const double grad_floor = 1e-12 * std::max(rhs.norm(), 1.0);

  std::vector<double> history;
  double f = objective(w);
  if (options.record_history) history.push_back(f);
  int rising = 0;
  int iter = 0;
  while (iter < options.max_iter) {
    const Eigen::VectorXd grad = 2.0 * (gram * w - rhs);
    if (grad.norm() <= grad_floor) break;
    w -= lr * grad;
    ++iter;
    const double f_next = objective(w);
    if (options.record_history) history.push_back(f_next);
    if (!std::isfinite(f_next)) {
      std::ostringstream msg;
      msg << "gradient descent diverged (non-finite objective) with learning rate " << lr;
      throw DivergenceError(lr, msg.str());
    }
    rising = f_next > f ? rising + 1 : 0;
    if (rising >= 10) {
      std::ostringstream msg;
      msg << "gradient descent diverged: objective rose for 10 consecutive steps "
             "with learning rate "
          << lr;
      throw DivergenceError(lr, msg.str());
    }
    const double change = std::abs(f - f_next);
    f = f_next;
    if (f <= exact_floor || change <= options.tol * std::max(f, exact_floor)) break;
  }

  FitResult result = make_result(problem, sys, w);
  result.iterations = iter;
  result.objective_history = std::move(history);
  std::size_t rank = 0;
  min_norm_solve(gram, rhs, rank);
  result.rank = rank;
  result.rank_deficient = rank < problem.num_weights();
  return result;
}

FitResult lctc_fit(const FitProblem& problem) {
  if (!problem.parallel_small) {
    throw InvalidInput("lctc_fit: problem has no parallel small branch");
  }
  if (problem.kernel_size < 5) {
    throw InvalidInput("lctc_fit: large kernel must have K >= 5");
  }
  return fit_closed_form(problem);
}

std::vector<SweepPoint> residual_sweep(std::size_t n, int r,
                                       std::span<const std::size_t> kernel_sizes) {
  if (!std::is_sorted(kernel_sizes.begin(), kernel_sizes.end())) {
    throw InvalidInput("residual_sweep: kernel sizes must be ascending");
  }
  std::vector<SweepPoint> out;
  out.reserve(kernel_sizes.size());
  for (std::size_t k : kernel_sizes) {
    FitProblem p;
    p.n = n;
    p.factor = r;
    p.kernel_size = k;
    out.push_back({k, fit_closed_form(p).residual});
  }
  return out;
}

EdgeProfile kernel_edge_profile(const KernelSpec& kernel) {
  const std::size_t k = kernel.size();
  if (k < 3) throw InvalidInput("kernel_edge_profile: kernel size must be >= 3");
  const double kd = static_cast<double>(k);
  const double sixth = kd / 6.0;
  const double mid = (kd - 1.0) / 2.0;
  double center = 0.0;
  double edge = 0.0;
  std::size_t n_center = 0;
  std::size_t n_edge = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double w = std::abs(kernel.weights()[i]);
    const double di = static_cast<double>(i);
    if (std::abs(di - mid) < sixth) {
      center += w;
      ++n_center;
    }
    if (static_cast<double>(std::min(i, k - 1 - i)) < sixth) {
      edge += w;
      ++n_edge;
    }
  }
  EdgeProfile profile;
  profile.center_mass = center / static_cast<double>(n_center);
  profile.edge_mass = edge / static_cast<double>(n_edge);
  profile.decays_toward_edge = profile.edge_mass < profile.center_mass;
  return profile;
}

}  // namespace upspec
