/*
 * Copyright (c) 2026, The ctsf Authors
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

#ifndef CTSF_STANDARD_FORM_HH_
#define CTSF_STANDARD_FORM_HH_

#include "ctsf/consensus.hh"
#include "ctsf/evaluation.hh"
#include "ctsf/representative.hh"
#include "ctsf/syntax.hh"

namespace ctsf {

/**
 * Extracts the standard-form representative of a configuration.
 *
 * Evaluates `c`, reads every component as one of the normal-form shapes
 * and restores a missing wrapper as (0, bottom, 1). The result is checked
 * by expanding it again with sfi and comparing against the evaluated
 * input, so a successful return is exact.
 *
 * Throws Error(kNotReachableShape) when a component matches no shape or
 * the trusted immortal is unset.
 */
Representative sf(const Configuration& c, const Model& model);
/// sf on an already evaluated, flattened network.
Representative sf(const Gamma& gamma, Location ti, FlatNetwork flat, const Model& model);

/// The normal-form configuration of a representative, in canonical order.
/// Throws Error(kInvariantViolation) for an invalid representative.
Configuration sfi(const Representative& r, const Model& model);

/// Structural congruence on reachable configurations: equal representatives.
bool congruent(const Configuration& a, const Configuration& b, const Model& model);

}  // namespace ctsf

#endif  // CTSF_STANDARD_FORM_HH_
