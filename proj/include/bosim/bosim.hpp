/**
 * Copyright 2026 bosim contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BOSIM_BOSIM_HPP
#define BOSIM_BOSIM_HPP

/**
@brief Umbrella header: the whole photonic-sampling toolkit in one include.
*/

#include "common.hpp"
#include "matrix.hpp"
#include "kernels.hpp"
#include "rng.hpp"
#include "circuits.hpp"
#include "patterns.hpp"
#include "gaussian.hpp"
#include "fockspace.hpp"
#include "distributions.hpp"
#include "validation.hpp"
#include "vibronic.hpp"
#include "scaling.hpp"
#include "io.hpp"

#endif  // BOSIM_BOSIM_HPP
