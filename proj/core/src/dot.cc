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

#include "ctsf/dot.hh"

#include <algorithm>

#include "ctsf/representative.hh"

namespace ctsf {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_dot(std::ostream& out, const LtsGraph& g) {
  out << "digraph lts {\n  node [shape=ellipse];\n";
  for (NodeId n = 0; n < g.size(); ++n) {
    bool initial = std::find(g.initials.begin(), g.initials.end(), n) != g.initials.end();
    out << "  n" << n << " [label=" << quoted(digest(g.key(n)))
        << (initial ? ", peripheries=2" : "") << "];\n";
  }
  for (const auto& e : g.edges()) {
    out << "  n" << e.src << " -> n" << e.dst << " [label="
        << quoted(e.label.to_string() + ":" + g.action(e.action).to_string()) << "];\n";
  }
  out << "}\n";
}

}  // namespace ctsf
