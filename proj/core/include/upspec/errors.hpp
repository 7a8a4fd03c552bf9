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

#ifndef UPSPEC_ERRORS_HPP_
#define UPSPEC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace upspec {

// Precondition violated by a caller-supplied value (empty signal, wrong
// channel count, shape mismatch, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base for failures of a numerical procedure on otherwise valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An inverse transform produced an imaginary residue above threshold, i.e.
// the spectrum was not conjugate symmetric.
class NonRealResult : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
 public:
  DivergenceError(double learning_rate, const std::string& what)
      : NumericalError(what), learning_rate_(learning_rate) {}
  double learning_rate() const noexcept { return learning_rate_; }

 private:
  double learning_rate_;
};

}  // namespace upspec

#endif  // UPSPEC_ERRORS_HPP_
