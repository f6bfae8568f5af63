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

#ifndef CTSF_REPRESENTATIVE_HH_
#define CTSF_REPRESENTATIVE_HH_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ctsf/consensus.hh"
#include "ctsf/value.hh"

namespace ctsf {

/// Phase-1 message from p to i in round r carrying relay vector delta.
struct Out1 {
  int p = 0, i = 0, r = 0;
  Value delta;
  auto operator<=>(const Out1&) const = default;
  bool operator==(const Out1&) const = default;
};

/// Phase-2 message from p to i carrying the knowledge vector.
struct Out2 {
  int p = 0, i = 0;
  Value vector;
  auto operator<=>(const Out2&) const = default;
  bool operator==(const Out2&) const = default;
};

/// Decision of agent p on its way to the wrapper.
struct Out3 {
  int p = 0;
  Value v;
  auto operator<=>(const Out3&) const = default;
  bool operator==(const Out3&) const = default;
};

/// Agent p collecting round r, waiting for sender `next`.
struct In1 {
  int p = 0, r = 0;
  Value know, msgs;
  int next = 0;
  auto operator<=>(const In1&) const = default;
  bool operator==(const In1&) const = default;
};

/// Agent p collecting phase-2 vectors, waiting for sender `next`.
struct In2 {
  int p = 0;
  Value know, msgs;
  int next = 0;
  auto operator<=>(const In2&) const = default;
  bool operator==(const In2&) const = default;
};

/// Wrapper state: index j (0 once ok is reached), value w, receptive b.
struct Wrap {
  int j = 0;
  Value w;
  int b = 1;
  auto operator<=>(const Wrap&) const = default;
  bool operator==(const Wrap&) const = default;
};

/**
 * The standard-form representative of a reachable configuration: the
 * global state read off its normal form. All vectors are kept sorted so
 * that equal states compare and encode equal.
 */
struct Representative {
  std::vector<int> live;
  int budget = 0;
  int ti = 0;
  std::vector<Out1> out1;
  std::vector<Out2> out2;
  std::vector<Out3> out3;
  std::vector<In1> in1;
  std::vector<In2> in2;
  Wrap wrap;

  bool is_live(int p) const;
  /// Sorts every set-valued field.
  void normalize();

  auto operator<=>(const Representative&) const = default;
  bool operator==(const Representative&) const = default;
};

/// Throws Error(kInvariantViolation) naming the first broken invariant:
/// occurring agents live, index bounds, one role per agent, at most one
/// message per key.
void validate(const Representative& r, int n);

/// Compact canonical binary key; equal representatives give equal keys.
std::string encode(const Representative& r);
/// Inverse of encode. Throws Error(kInvalidRepresentative) on garbage.
Representative decode(std::string_view key);

void encode_value(const Value& v, std::string& out);
Value decode_value(std::string_view& in);

/// Canonical JSON object with sorted keys and sorted set elements.
std::string to_json(const Representative& r);
/// Value as JSON: null, number, [a, b] or {"set": [...]}.
std::string value_json(const Value& v);

/// Multi-line human-readable rendering.
std::string render(const Representative& r);
/// Short hex digest of the binary key.
std::string digest(std::string_view key);

}  // namespace ctsf

#endif  // CTSF_REPRESENTATIVE_HH_
