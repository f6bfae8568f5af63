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

#ifndef CTSF_REP_SEMANTICS_HH_
#define CTSF_REP_SEMANTICS_HH_

#include <vector>

#include "ctsf/consensus.hh"
#include "ctsf/representative.hh"
#include "ctsf/rules.hh"

namespace ctsf {

struct RepStep {
  RuleLabel label;
  Representative target;
};

/**
 * The internal steps of the representative semantics: phase-1 receive
 * and suspicion (SR1 to SR6), phase-2 receive and suspicion (SR1', SR2',
 * SR4', SR5'), the wrapper rules SRW1 and SRW2, and crashes (SR7).
 *
 * Targets are normalized. Errors raised by the helper functions (for
 * example kEmptyKnowledge under a mutation) propagate.
 */
std::vector<RepStep> rep_successors(const Representative& r, const Model& model);

}  // namespace ctsf

#endif  // CTSF_REP_SEMANTICS_HH_
