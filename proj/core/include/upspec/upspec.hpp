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

#ifndef UPSPEC_UPSPEC_HPP_
#define UPSPEC_UPSPEC_HPP_

#include "upspec/alias.hpp"
#include "upspec/dft.hpp"
#include "upspec/errors.hpp"
#include "upspec/kernel_fit.hpp"
#include "upspec/signal.hpp"
#include "upspec/upsamplers.hpp"

#endif  // UPSPEC_UPSPEC_HPP_
