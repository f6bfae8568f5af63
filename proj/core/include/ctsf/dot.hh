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

#ifndef CTSF_DOT_HH_
#define CTSF_DOT_HH_

#include <ostream>

#include "ctsf/graph.hh"

namespace ctsf {

/// Graphviz rendering: one node per state labelled with its digest,
/// initial states doubled, edges labelled `rule:action`.
void write_dot(std::ostream& out, const LtsGraph& g);

}  // namespace ctsf

#endif  // CTSF_DOT_HH_
